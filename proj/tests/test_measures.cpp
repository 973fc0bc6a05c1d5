#include <doctest.h>

#include <cmath>

#include "jensen/measures.hpp"
#include "jensen/zoo.hpp"
#include "support/oracles.hpp"

using namespace jensen;

TEST_CASE("triangle T centroids and gap") {
  Shape T = make_triangle_T();
  Vec bc = shape_body_centroid(T);
  CHECK(bc[0] == doctest::Approx(1.0 / 3).epsilon(1e-13));
  CHECK(std::abs(bc[1]) < 1e-13);
  Vec sc = shape_boundary_centroid(T);
  // Edge midpoints (0,0),(1/2,1/2),(1/2,-1/2), lengths 2, sqrt2, sqrt2:
  // weighted mean x = (0*2 + 1/2*sqrt2*2)/(2+2sqrt2) = 1 - sqrt2/2.
  CHECK(sc[0] == doctest::Approx(1.0 - std::sqrt(2.0) / 2).epsilon(1e-13));
  CHECK(std::abs(sc[1]) < 1e-13);
  CentroidReport cr = centroid_report(T);
  CHECK(cr.gap == doctest::Approx(std::sqrt(2.0) / 2 - 2.0 / 3).epsilon(1e-12));
  CHECK(!cr.coincide);
}

TEST_CASE("measure dispatch agrees with realized hulls") {
  Parallelotope p = random_parallelotope(3, 21);
  REQUIRE(p.realized.has_value());
  CHECK(shape_volume(Shape{p}) == doctest::Approx(p.realized->volume()).epsilon(1e-11));
  CHECK(shape_surface(Shape{p}) ==
        doctest::Approx(p.realized->surface_measure()).epsilon(1e-11));
  CHECK((shape_boundary_centroid(Shape{p}) - p.realized->boundary_centroid()).norm() <
        1e-10);

  Cone c = random_cone(3, 33);
  CHECK(shape_volume(Shape{c}) == doctest::Approx(c.realized.volume()).epsilon(1e-12));
  CHECK(cone_volume_identity_residual(c) < 1e-9);
}

TEST_CASE("cone volume identity across random cones") {
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Cone c = random_cone(n, seed);
      CHECK(cone_volume_identity_residual(c) < 1e-9);
    }
  }
}

TEST_CASE("minkowski identity on tangent polytopes") {
  for (int n : {2, 3}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Polytope W = random_tangent_polytope(n, n + 3, seed);
      CHECK(minkowski_identity_residual(W, 1.0) < 1e-9);
    }
  }
  // And on shapes with known inradius: cube half-width 1 has r = 1.
  Polytope cube = make_platonic(PlatonicSolid::Cube);
  CHECK(minkowski_identity_residual(cube, 1.0) < 1e-12);
}

TEST_CASE("ball measure formulas vs low-dim closed forms") {
  CHECK(ball_volume(2, 3.0) == doctest::Approx(9.0 * M_PI).epsilon(1e-14));
  CHECK(ball_volume(3, 2.0) == doctest::Approx(32.0 * M_PI / 3).epsilon(1e-14));
  CHECK(ball_volume(4, 1.0) == doctest::Approx(M_PI * M_PI / 2).epsilon(1e-14));
  CHECK(sphere_measure(4, 1.0) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK(sphere_measure(2, 2.5) == doctest::Approx(5.0 * M_PI).epsilon(1e-14));
}

TEST_CASE("monte carlo cross-check of a cone's centroid") {
  Cone c = random_cone(3, 2);
  const Polytope& P = c.realized;
  auto [mean, se] = jensen::testing::mc_centroid(P, 40000, 99);
  Vec bc = shape_body_centroid(Shape{c});
  for (int i = 0; i < 3; ++i) CHECK(std::abs(mean[i] - bc[i]) < 6.0 * se);
}
