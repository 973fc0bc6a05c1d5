#include <doctest.h>

#include <cmath>

#include "jensen/convexfn.hpp"

using namespace jensen;

namespace {
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("pointwise evaluation formulas") {
  CHECK(evaluate(CoordProj(1, +1), v2(0.3, 0.7)) == doctest::Approx(0.3));
  CHECK(evaluate(CoordProj(2, -1), v2(0.3, 0.7)) == doctest::Approx(-0.7));

  MaxAffine abs1(std::vector<Affine>{{v2(1, 0), 0.0}, {v2(-1, 0), 0.0}});
  CHECK(evaluate(abs1, v2(-2, 5)) == doctest::Approx(2.0));

  QuadForm sq(Mat::Identity(2, 2), Vec::Zero(2), 0.0);
  CHECK(evaluate(sq, v2(1, 2)) == doctest::Approx(5.0));

  CHECK(evaluate(PNorm(2.0, Vec::Zero(2)), v2(3, 4)) == doctest::Approx(5.0));
  CHECK(evaluate(PNorm(1.0, v2(1, 1)), v2(3, 4)) == doctest::Approx(5.0));
  // Large p approaches the max norm without overflowing.
  CHECK(evaluate(PNorm(200.0, Vec::Zero(2)), v2(3, 4)) ==
        doctest::Approx(4.0).epsilon(1e-2));

  CHECK(evaluate(ExpAffine(v2(0.5, 0), 1.0), v2(2, 9)) ==
        doctest::Approx(std::exp(2.0)));

  Affine lin{v2(2, -1), 3.0};
  CHECK(evaluate(ConvexFn{lin}, v2(1, 1)) == doctest::Approx(4.0));
}

TEST_CASE("constructor validation and the exp clamp") {
  CHECK_THROWS_AS(MaxAffine(std::vector<Affine>{}), DegenerateInput);
  CHECK_THROWS_AS(PNorm(0.5, Vec::Zero(2)), DegenerateInput);
  CHECK_THROWS_AS(CoordProj(0, 1), DegenerateInput);
  CHECK_THROWS_AS(CoordProj(1, 2), DegenerateInput);
  CHECK_THROWS_AS(QuadForm(Mat::Identity(3, 3), Vec::Zero(2), 0.0),
                  DimensionMismatch);

  ExpAffine e(v2(5.0, -3.0), 0.0);
  CHECK(e.a[0] == doctest::Approx(2.0));
  CHECK(e.a[1] == doctest::Approx(-2.0));

  CHECK_THROWS_AS(evaluate(CoordProj(3, 1), v2(0, 0)), DimensionMismatch);
  CHECK_THROWS_AS(evaluate(PNorm(2.0, Vec::Zero(3)), v2(0, 0)), DimensionMismatch);
}

TEST_CASE("maxaffine equals the max over its pieces") {
  Rng rng(7);
  MaxAffine f = random_maxaffine(3, 5, rng);
  for (int s = 0; s < 50; ++s) {
    Vec x = Vec::NullaryExpr(3, [&](Eigen::Index) { return rng.uniform(-2.0, 2.0); });
    double manual = -1e300;
    for (const Affine& p : f.pieces) manual = std::max(manual, p.a.dot(x) + p.b);
    CHECK(evaluate(f, x) == doctest::Approx(manual).epsilon(1e-15));
  }
}

TEST_CASE("affine normal forms") {
  auto a = to_affine(ConvexFn{CoordProj(2, -1)}, 3);
  REQUIRE(a.has_value());
  CHECK(a->a[0] == 0.0);
  CHECK(a->a[1] == -1.0);
  CHECK(a->a[2] == 0.0);
  CHECK(a->b == 0.0);

  MaxAffine single(std::vector<Affine>{{v2(1, 2), 0.5}});
  auto m = to_affine(ConvexFn{single}, 2);
  REQUIRE(m.has_value());
  CHECK(m->b == doctest::Approx(0.5));

  CHECK(!to_affine(ConvexFn{PNorm(2.0, Vec::Zero(2))}, 2).has_value());
  CHECK(!to_affine(ConvexFn{QuadForm(Mat::Identity(2, 2), Vec::Zero(2), 0.0)}, 2)
             .has_value());
  CHECK_THROWS_AS(to_affine(ConvexFn{CoordProj(4, 1)}, 2), DimensionMismatch);
}

TEST_CASE("convexity probe passes the standard suite and catches a fake") {
  Vec lo = Vec::Constant(2, -1.5);
  Vec hi = Vec::Constant(2, 1.5);
  auto suite = standard_suite(2, Vec::Zero(2), 42);
  for (const ConvexFn& f : suite) {
    ProbeResult r = convexity_probe(f, lo, hi, 500, 11);
    CHECK(r.pass);
  }

  ProbeResult bad = convexity_probe_raw(
      [](const Vec& x) { return -x.squaredNorm(); }, lo, hi, 500, 11);
  CHECK(!bad.pass);
  CHECK(bad.excess > 0.0);
  // The witness actually violates midpoint convexity for the probed function.
  Vec mix = bad.t * bad.x + (1.0 - bad.t) * bad.y;
  double lhs = -mix.squaredNorm();
  double rhs = bad.t * -bad.x.squaredNorm() + (1.0 - bad.t) * -bad.y.squaredNorm();
  CHECK(lhs > rhs);
}

TEST_CASE("standard suite composition") {
  for (int n : {2, 3, 4, 5}) {
    Vec c = Vec::Constant(n, 0.25);
    auto suite = standard_suite(n, c, 3);
    CHECK(suite.size() == static_cast<size_t>(4 * n + 24));
    for (const ConvexFn& f : suite) CHECK(accepts_dim(f, n));

    int coordproj = 0, maxaffine = 0, pnorm = 0, quad = 0, expa = 0;
    for (const ConvexFn& f : suite) {
      if (std::holds_alternative<CoordProj>(f)) ++coordproj;
      if (std::holds_alternative<MaxAffine>(f)) ++maxaffine;
      if (std::holds_alternative<PNorm>(f)) ++pnorm;
      if (std::holds_alternative<QuadForm>(f)) ++quad;
      if (std::holds_alternative<ExpAffine>(f)) ++expa;
    }
    CHECK(coordproj == 2 * n);
    CHECK(quad == 1);
    CHECK(expa == 2 * n);
    if (n <= 4) {
      CHECK(pnorm == 1);        // only the 2-norm
      CHECK(maxaffine == 22);   // l1, linf, and 20 random
    } else {
      CHECK(pnorm == 2);        // 1-norm falls back to PNorm
      CHECK(maxaffine == 21);
    }
  }

  // Determinism: equal seeds agree, different seeds differ somewhere.
  Vec c = Vec::Zero(2);
  auto s1 = standard_suite(2, c, 10);
  auto s2 = standard_suite(2, c, 10);
  auto s3 = standard_suite(2, c, 11);
  Vec probe = v2(0.37, -0.81);
  bool any_diff = false;
  for (size_t i = 0; i < s1.size(); ++i) {
    CHECK(evaluate(s1[i], probe) == doctest::Approx(evaluate(s2[i], probe)).epsilon(1e-15));
    if (std::abs(evaluate(s1[i], probe) - evaluate(s3[i], probe)) > 1e-12)
      any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("describe gives short stable names") {
  CHECK(describe(ConvexFn{CoordProj(3, -1)}) == "coordproj(-x3)");
  CHECK(describe(ConvexFn{PNorm(2.0, Vec::Zero(2))}) == "pnorm(p=2)");
  MaxAffine m(std::vector<Affine>{{v2(1, 0), 0.0}, {v2(0, 1), 0.0}});
  CHECK(describe(ConvexFn{m}) == "maxaffine[2]");
}
