#include <doctest.h>

#include <cmath>

#include "jensen/insphere.hpp"
#include "jensen/zoo.hpp"

using namespace jensen;

TEST_CASE("triangle T incenter") {
  Polytope T = make_triangle_T();
  InsphereResult ins = chebyshev_center(T);
  // Incenter of (0,-1),(0,1),(1,0): r = area/s = 1/(1+sqrt2) = sqrt2 - 1,
  // center on the x axis at x = r (tangent to the edge x=0).
  double r = std::sqrt(2.0) - 1.0;
  CHECK(ins.radius == doctest::Approx(r).epsilon(1e-10));
  CHECK(ins.center[0] == doctest::Approx(r).epsilon(1e-9));
  CHECK(std::abs(ins.center[1]) < 1e-9);
  CHECK(ins.tangent_to_all);  // a triangle's incircle touches all three edges
  CHECK(ins.center_unique);
  CHECK(ins.worst_facet_gap < 1e-9);
  CHECK(ins.facet_gaps.size() == 3);
}

TEST_CASE("regular tetrahedron inradius") {
  // Vertices (1,1,1),(1,-1,-1),(-1,1,-1),(-1,-1,1): edge a = 2*sqrt2,
  // inradius a/(2*sqrt6) = sqrt2/sqrt6 = 1/sqrt3.
  Polytope tet = make_platonic(PlatonicSolid::Tetrahedron);
  InsphereResult ins = chebyshev_center(tet);
  CHECK(ins.radius == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  CHECK(ins.center.norm() < 1e-9);
  CHECK(ins.tangent_to_all);
}

TEST_CASE("rectangle: not tangent to all, non-unique center axis") {
  std::vector<Vec> pts;
  for (double x : {-1.0, 1.0})
    for (double y : {-0.5, 0.5}) {
      Vec v(2);
      v << x, y;
      pts.push_back(v);
    }
  Polytope rect = polytope_from_vertices(pts);
  InsphereResult ins = chebyshev_center(rect);
  CHECK(ins.radius == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(!ins.tangent_to_all);
  // Optimal centers form the segment |x| <= 0.5, y = 0; the worst facet gap
  // is 0.5 + |x| for whichever center the solver returns.
  CHECK(ins.worst_facet_gap >= 0.5 - 1e-9);
  CHECK(ins.worst_facet_gap <= 1.0 + 1e-9);
  CHECK(!ins.center_unique);  // center slides along the long axis
  CHECK(std::abs(ins.center[1]) < 1e-9);
  CHECK(std::abs(ins.center[0]) <= 0.5 + 1e-9);
}

TEST_CASE("square: tangent to all with unique center") {
  Polytope sq = polytope_from_vertices([] {
    std::vector<Vec> pts;
    for (double x : {-1.0, 1.0})
      for (double y : {-1.0, 1.0}) {
        Vec v(2);
        v << x, y;
        pts.push_back(v);
      }
    return pts;
  }());
  InsphereResult ins = chebyshev_center(sq);
  CHECK(ins.radius == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ins.tangent_to_all);
  CHECK(ins.center_unique);
  CHECK(ins.center.norm() < 1e-9);
}

TEST_CASE("tangency report flags the slack facets") {
  std::vector<Vec> pts;
  for (double x : {0.0, 4.0})
    for (double y : {0.0, 1.0}) {
      Vec v(2);
      v << x, y;
      pts.push_back(v);
    }
  Polytope rect = polytope_from_vertices(pts);
  TangencyReport rep = tangency_report(rect);
  CHECK(rep.insphere.radius == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(!rep.insphere.tangent_to_all);
  // The optimal center is any point of a segment; the LP may return a vertex
  // of that segment (3 tight facets, 1 slack) or an interior point (2 slack).
  REQUIRE(!rep.slack_facets.empty());
  CHECK(rep.slack_facets.size() <= 2);
  for (size_t fid : rep.slack_facets) {
    // slack facets can only be the short ends, with normals +-e_x
    CHECK(std::abs(std::abs(rect.facets()[fid].plane.normal[0]) - 1.0) < 1e-9);
  }
}

TEST_CASE("icosahedron inradius matches the classical ratio") {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  Polytope ico = make_platonic(PlatonicSolid::Icosahedron);
  InsphereResult ins = chebyshev_center(ico);
  // Edge length 2 for the (0,±1,±phi) coordinates, r = phi^2/sqrt(3).
  CHECK(ins.radius == doctest::Approx(phi * phi / std::sqrt(3.0)).epsilon(1e-9));
  CHECK(ins.tangent_to_all);
}
