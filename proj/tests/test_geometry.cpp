#include <doctest.h>

#include <cmath>

#include "jensen/geometry.hpp"
#include "support/oracles.hpp"

using namespace jensen;

namespace {

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

Polytope triangle_T() {
  return polytope_from_vertices({v2(0, -1), v2(0, 1), v2(1, 0)});
}

}  // namespace

TEST_CASE("simplex measures") {
  Simplex s;
  s.vertices = Mat(2, 3);
  s.vertices << 0, 1, 0, 0, 0, 1;
  CHECK(s.measure() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK((s.centroid() - v2(1.0 / 3, 1.0 / 3)).norm() < 1e-15);
  auto [a, b] = s.longest_edge();
  CHECK(((a == 1 && b == 2) || (a == 2 && b == 1)));
  CHECK(s.diameter() == doctest::Approx(std::sqrt(2.0)));

  Simplex pt;
  pt.vertices = Mat(3, 1);
  pt.vertices << 1, 2, 3;
  CHECK(pt.kdim() == 0);
  CHECK(pt.measure() == 1.0);

  // 2-simplex embedded in R^3: area via Gram determinant.
  Simplex e;
  e.vertices = Mat(3, 3);
  e.vertices << 0, 1, 0, 0, 0, 1, 1, 1, 1;
  CHECK(e.measure() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("unit square hull: dedup, interior drop, exact measures") {
  std::vector<Vec> pts = {v2(0, 0), v2(1, 0),          v2(1, 1), v2(0, 1),
                          v2(0.5, 0.5),  // interior, must be dropped
                          v2(1, 1)};     // duplicate
  Polytope P = polytope_from_vertices(pts);
  CHECK(P.dim() == 2);
  CHECK(P.vertices().size() == 4);
  CHECK(P.facets().size() == 4);
  CHECK(P.volume() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(P.surface_measure() == doctest::Approx(4.0).epsilon(1e-13));
  CHECK((P.body_centroid() - v2(0.5, 0.5)).norm() < 1e-12);
  CHECK((P.boundary_centroid() - v2(0.5, 0.5)).norm() < 1e-12);
  for (size_t f = 0; f < P.facets().size(); ++f)
    CHECK(P.facet_measure(static_cast<int>(f)) == doctest::Approx(1.0));
  CHECK(P.contains(v2(0.5, 0.5)));
  CHECK(!P.contains(v2(1.5, 0.5)));
  CHECK(P.diameter() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("triangle oracle values") {
  Polytope T = triangle_T();
  CHECK(T.volume() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(T.surface_measure() == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-13));
  // Body centroid (1/3, 0); boundary centroid (1 - sqrt(2)/2, 0) by hand:
  // edge midpoints (0,0), (.5,.5), (.5,-.5) weighted by lengths 2, sqrt2, sqrt2.
  CHECK(T.body_centroid()[0] == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(std::abs(T.body_centroid()[1]) < 1e-13);
  CHECK(T.boundary_centroid()[0] ==
        doctest::Approx(1.0 - std::sqrt(2.0) / 2).epsilon(1e-13));
  CHECK(std::abs(T.boundary_centroid()[1]) < 1e-13);
}

TEST_CASE("facet invariants hold on a regular tetrahedron") {
  std::vector<Vec> pts = {v3(1, 1, 1), v3(1, -1, -1), v3(-1, 1, -1), v3(-1, -1, 1)};
  Polytope P = polytope_from_vertices(pts);
  CHECK(P.vertices().size() == 4);
  CHECK(P.facets().size() == 4);
  CHECK(P.volume() == doctest::Approx(8.0 / 3).epsilon(1e-13));
  CHECK(P.surface_measure() == doctest::Approx(8.0 * std::sqrt(3.0)).epsilon(1e-13));
  CHECK(P.body_centroid().norm() < 1e-12);
  CHECK(P.boundary_centroid().norm() < 1e-12);
  for (const Facet& f : P.facets()) {
    CHECK(std::abs(f.plane.normal.norm() - 1.0) < 1e-12);
    CHECK(f.vertices.size() == 3);
    for (int vi : f.vertices)
      CHECK(std::abs(f.plane.residual(P.vertices()[vi])) < 1e-9);
    for (const Vec& v : P.vertices()) CHECK(f.plane.residual(v) < 1e-9);
  }
  // Body triangulation volumes are all positive (orientation fixed).
  double tot = 0.0;
  for (const Simplex& s : P.body_triangulation()) {
    Mat E(3, 3);
    for (int c = 0; c < 3; ++c) E.col(c) = s.vertices.col(c + 1) - s.vertices.col(0);
    CHECK(E.determinant() > 0.0);
    tot += E.determinant() / 6.0;
  }
  CHECK(tot == doctest::Approx(P.volume()).epsilon(1e-13));
}

TEST_CASE("random 3d hulls agree with hit-or-miss oracles") {
  for (std::uint64_t seed : {11u, 22u, 33u}) {
    Rng rng(seed);
    std::vector<Vec> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(rng.gaussian_vec(3));
    Polytope P = [&] {
      try {
        return polytope_from_vertices(pts);
      } catch (const DegenerateInput&) {
        // Vanishingly unlikely with gaussian points; regenerate deterministically.
        std::vector<Vec> q;
        Rng r2(seed + 1000);
        for (int i = 0; i < 8; ++i) q.push_back(r2.gaussian_vec(3));
        return polytope_from_vertices(q);
      }
    }();
    for (const Vec& p : pts) CHECK(P.contains(p, 1e-9));
    auto vol = testing::mc_volume(P, 200000, seed * 7 + 1);
    CHECK(std::abs(P.volume() - vol.estimate) < 4.0 * vol.stderr_ + 1e-6);
    auto cen = testing::mc_centroid(P, 100000, seed * 7 + 2);
    CHECK((P.body_centroid() - cen.first).norm() < 6.0 * cen.second + 1e-6);
  }
}

TEST_CASE("4d cross-polytope") {
  std::vector<Vec> pts;
  for (int j = 0; j < 4; ++j)
    for (double sg : {1.0, -1.0}) {
      Vec p = Vec::Zero(4);
      p[j] = sg;
      pts.push_back(p);
    }
  Polytope P = polytope_from_vertices(pts);
  CHECK(P.vertices().size() == 8);
  CHECK(P.facets().size() == 16);
  CHECK(P.volume() == doctest::Approx(2.0 / 3).epsilon(1e-12));
  // 16 regular tetrahedral cells of edge sqrt(2): 3-measure 1/3 each.
  CHECK(P.surface_measure() == doctest::Approx(16.0 / 3).epsilon(1e-12));
  CHECK(P.body_centroid().norm() < 1e-12);
  CHECK(P.boundary_centroid().norm() < 1e-12);
}

TEST_CASE("degenerate vertex inputs throw") {
  CHECK_THROWS_AS(polytope_from_vertices({v2(0, 0), v2(1, 1), v2(2, 2), v2(3, 3)}),
                  DegenerateInput);
  CHECK_THROWS_AS(polytope_from_vertices({v2(0, 0), v2(1, 0)}), DegenerateInput);
  Vec five = Vec::Zero(5);
  CHECK_THROWS_AS(polytope_from_vertices({five, five, five, five, five, five}),
                  UnsupportedDimension);
}

TEST_CASE("halfspace intersections") {
  auto hs = [](double nx, double ny, double d) {
    return HalfSpace(v2(nx, ny), d);
  };
  SUBCASE("unit square with a redundant cut") {
    std::vector<HalfSpace> H = {hs(1, 0, 1), hs(-1, 0, 0), hs(0, 1, 1), hs(0, -1, 0),
                                hs(1, 0, 2)};  // redundant
    Polytope P = polytope_from_halfspaces(H);
    CHECK(P.facets().size() == 4);
    CHECK(P.volume() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(P.vertices().size() == 4);
  }
  SUBCASE("empty") {
    std::vector<HalfSpace> H = {hs(1, 0, 0), hs(-1, 0, -1), hs(0, 1, 1), hs(0, -1, 0)};
    CHECK_THROWS_AS(polytope_from_halfspaces(H), EmptyRegion);
  }
  SUBCASE("unbounded") {
    double s = std::sqrt(0.5);
    std::vector<HalfSpace> H = {hs(-1, 0, 0), hs(0, -1, 0), hs(-s, -s, 1)};
    CHECK_THROWS_AS(polytope_from_halfspaces(H), UnboundedRegion);
  }
  SUBCASE("flat region is degenerate") {
    std::vector<HalfSpace> H = {hs(1, 0, 0), hs(-1, 0, 0), hs(0, 1, 1), hs(0, -1, 0)};
    CHECK_THROWS_AS(polytope_from_halfspaces(H), DegenerateInput);
  }
  SUBCASE("non-unit normal rejected") {
    std::vector<HalfSpace> H;
    H.resize(3);
    H[0].normal = v2(2, 0);
    H[0].offset = 1;
    H[1].normal = v2(-1, 0);
    H[1].offset = 0;
    H[2].normal = v2(0, 1);
    H[2].offset = 1;
    CHECK_THROWS_AS(polytope_from_halfspaces(H), DegenerateInput);
  }
}

TEST_CASE("facet flats and coplanar point sets") {
  std::vector<Vec> cube;
  for (double x : {0.0, 1.0})
    for (double y : {0.0, 1.0})
      for (double z : {0.0, 1.0}) cube.push_back(v3(x, y, z));
  Polytope P = polytope_from_vertices(cube);
  CHECK(P.facets().size() == 6);
  CHECK(P.volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(P.surface_measure() == doctest::Approx(6.0).epsilon(1e-12));

  EmbeddedPolytope flat = facet_flat(P, 0);
  CHECK(flat.flat.dim() == 2);
  CHECK(flat.flat.volume() == doctest::Approx(1.0).epsilon(1e-12));
  // embed(local(x)) is the identity on the facet.
  for (int vi : P.facets()[0].vertices) {
    const Vec& v = P.vertices()[vi];
    CHECK((flat.embed(flat.local(v)) - v).norm() < 1e-12);
  }

  SUBCASE("flatten_points accepts coplanar, rejects skew") {
    std::vector<Vec> quad = {v3(0, 0, 1), v3(1, 0, 1), v3(1, 1, 1), v3(0, 1, 1)};
    EmbeddedPolytope f = flatten_points(quad);
    CHECK(f.flat.volume() == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<Vec> skew = {v3(0, 0, 1), v3(1, 0, 1), v3(1, 1, 1), v3(0, 1, 1.5)};
    CHECK_THROWS_AS(flatten_points(skew), DegenerateInput);
    std::vector<Vec> line = {v3(0, 0, 0), v3(1, 0, 0), v3(2, 0, 0)};
    CHECK_THROWS_AS(flatten_points(line), DegenerateInput);
  }

  SUBCASE("segment base in the plane flattens to an interval") {
    std::vector<Vec> seg = {v2(-1, 0), v2(1, 0)};
    EmbeddedPolytope f = flatten_points(seg);
    CHECK(f.flat.dim() == 1);
    CHECK(f.flat.volume() == doctest::Approx(2.0).epsilon(1e-12));
  }
}
