#include <doctest.h>

#include <cmath>

#include "jensen/errors.hpp"
#include "jensen/measures.hpp"
#include "jensen/search.hpp"
#include "jensen/zoo.hpp"

using namespace jensen;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("affine worst case: triangle direction and symmetric shapes") {
  auto [dir, violation] = affine_worst_case(Shape{make_triangle_T()});
  CHECK(violation == doctest::Approx(std::sqrt(2.0) / 2 - 2.0 / 3).epsilon(1e-10));
  CHECK(dir[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(dir[1]) < 1e-10);

  auto [cdir, cviol] = affine_worst_case(Shape{make_cube(3)});
  CHECK(cviol < 1e-12);
  CHECK(cdir.norm() < 1e-12);

  auto [bdir, bviol] = affine_worst_case(Shape{make_ball(2, v2(0.4, 0.1), 2.0)});
  CHECK(bviol == 0.0);
  CHECK(bdir.isZero());
}

TEST_CASE("search recovers the triangle counterexample with one piece") {
  Shape T{make_triangle_T()};
  SearchResult r = maxaffine_search(T, 1, 8, 10000, 17);
  double exact = affine_worst_case(T).second;

  CHECK(r.best_violation >= 0.95 * exact);
  CHECK(r.certificate.verdict == Verdict::violated);
  // certificate.gap is boundary minus body, the negative of the objective
  CHECK(std::abs(-r.certificate.gap - r.best_violation) <=
        r.certificate.gap_error_bound + 2e-5);

  // One affine piece normalized to the unit 2-ball can never beat the exact
  // affine optimum.
  Vec a = r.best_function.pieces[0].a;
  CHECK(-r.certificate.gap / std::max(a.norm(), 1e-30) <=
        exact + r.certificate.gap_error_bound + 2e-5);

  REQUIRE(r.trace.restart_best.size() == 8);
  CHECK(!r.trace.budget_exhausted);
  CHECK(r.trace.evaluations > 0);
  CHECK(r.trace.evaluations <= 10000);
}

TEST_CASE("search certifies nothing on the cube") {
  SearchResult r = maxaffine_search(Shape{make_cube(3)}, 4, 8, 10000, 7);
  CHECK(r.best_violation <= 3.0 * r.certificate.gap_error_bound);
  CHECK(r.certificate.verdict != Verdict::violated);
  REQUIRE(r.best_function.pieces.size() == 4);
}

TEST_CASE("objective is invariant under a common intercept shift") {
  // Constants cancel between the two means, so shifting every piece by the
  // same amount must not move the gap beyond quadrature error.
  Shape sq{make_cube(2)};
  std::vector<Affine> ps = {{v2(0.8, -0.3), 0.1}, {v2(-0.5, 0.9), -0.4}, {v2(0.2, 0.6), 0.0}};
  MaxAffine f(ps);
  std::vector<Affine> shifted = ps;
  for (auto& p : shifted) p.b += 2.5;

  GapResult g0 = jensen_gap(sq, f);
  GapResult g1 = jensen_gap(sq, MaxAffine(shifted));
  CHECK(std::abs(g0.gap - g1.gap) <=
        2.0 * (g0.gap_error_bound + g1.gap_error_bound) + 1e-12);
}

TEST_CASE("piece monotonicity: two pieces certify at least the affine value") {
  Shape T{make_triangle_T()};
  SearchResult one = maxaffine_search(T, 1, 4, 4000, 3);
  SearchResult two = maxaffine_search(T, 2, 4, 12000, 3);
  CHECK(-two.certificate.gap >=
        -one.certificate.gap - one.certificate.gap_error_bound -
            two.certificate.gap_error_bound - 2e-5);
  REQUIRE(two.best_function.pieces.size() == 2);
}

TEST_CASE("starved budget is reported with a partial result") {
  SearchResult r = maxaffine_search(Shape{make_triangle_T()}, 2, 4, 30, 9);
  CHECK(r.trace.budget_exhausted);
  CHECK(!r.trace.note.empty());
  CHECK(r.trace.evaluations <= 30 + 8);  // slices may round up to one eval each
  REQUIRE(r.best_function.pieces.size() == 2);
  // The certificate is still recomputed at full precision for the best point.
  CHECK(std::isfinite(r.certificate.gap));
}

TEST_CASE("search argument validation") {
  Shape T{make_triangle_T()};
  CHECK_THROWS_AS(maxaffine_search(T, 0, 8, 100, 0), DegenerateInput);
  CHECK_THROWS_AS(maxaffine_search(T, 1, 0, 100, 0), DegenerateInput);
  CHECK_THROWS_AS(maxaffine_search(T, 1, 8, 0, 0), DegenerateInput);
}

TEST_CASE("search is deterministic given the seed") {
  Shape T{make_triangle_T()};
  SearchResult a = maxaffine_search(T, 2, 6, 3000, 21);
  SearchResult b = maxaffine_search(T, 2, 6, 3000, 21);
  CHECK(a.best_violation == b.best_violation);
  CHECK(a.trace.evaluations == b.trace.evaluations);
  REQUIRE(a.trace.restart_best.size() == b.trace.restart_best.size());
  for (size_t i = 0; i < a.trace.restart_best.size(); ++i)
    CHECK(a.trace.restart_best[i] == b.trace.restart_best[i]);
  for (size_t j = 0; j < a.best_function.pieces.size(); ++j) {
    CHECK(a.best_function.pieces[j].a == b.best_function.pieces[j].a);
    CHECK(a.best_function.pieces[j].b == b.best_function.pieces[j].b);
  }
}
