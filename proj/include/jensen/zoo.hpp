#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jensen/shapes.hpp"

namespace jensen {

// Throws DegenerateInput if |det(edges)| < 1e-12.
Parallelotope make_parallelotope(const Vec& origin, const Mat& edges);

// n >= 2, r > 0.
Ball make_ball(int n, const Vec& center, double radius);

// Cone over the flat spanned by coplanar base vertices; throws DegenerateInput
// if the apex lies on the base hyperplane (within 1e-9) or the base is not an
// (n-1)-dimensional flat polytope.
Cone make_cone(const std::vector<Vec>& base_vertices, const Vec& apex);
Cone make_cone(const EmbeddedPolytope& base, const Vec& apex);

// k >= 3 vertices at angles 2*pi*j/k on a circle of the given radius.
Polytope make_regular_polygon(int k, double circumradius = 1.0);

enum class PlatonicSolid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };
Polytope make_platonic(PlatonicSolid which, double scale = 1.0);

// Axis-aligned cube [-h, h]^n as a Parallelotope.
Parallelotope make_cube(int n, double half_width = 1.0);

// The counterexample triangle (0,-1), (0,1), (1,0).
Polytope make_triangle_T();

// Randomized generators (pure given seed).
Parallelotope random_parallelotope(int n, std::uint64_t seed);

// k random unit-normal halfspaces at distance 1 from the origin; retries with
// derived seeds until bounded, certified tangent to every facet, and with all
// vertices within radius 6 (so function ranges stay integrable at desk
// tolerances). Throws GenerationFailed after 100 retries.
Polytope random_tangent_polytope(int n, int k, std::uint64_t seed);

Cone random_cone(int n, std::uint64_t seed);

// Name-based access used by the CLI; accepts e.g. "triangle-T", "cube:3",
// "ball:4", "regular-polygon:7", "platonic:icosahedron",
// "random-parallelotope:3:17", "random-tangent:3:6:7", "random-cone:3:5".
// Throws ParseError for unknown names or bad arguments.
Shape zoo_shape(const std::string& name);

// (pattern, description) pairs for `zoo list`.
std::vector<std::pair<std::string, std::string>> zoo_catalog();

}  // namespace jensen
