#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jensen/geometry.hpp"

namespace jensen {

// {origin + E t : t in [0,1]^n}; columns of `edges` are linearly independent.
// Realized as an explicit corner polytope in dimensions <= 4.
struct Parallelotope {
  Vec origin;
  Mat edges;
  std::optional<Polytope> realized;

  int dim() const { return static_cast<int>(origin.size()); }
  Vec center() const { return origin + 0.5 * edges.rowwise().sum(); }
  // (n-1)-measure of the facet pair missing edge i (each of the two).
  double facet_pair_measure(int i) const;
};

struct Ball {
  Vec center;
  double radius = 0.0;

  int dim() const { return static_cast<int>(center.size()); }
};

// G = conv{base, apex} over an (n-1)-dimensional flat base.
struct Cone {
  std::vector<Vec> base_vertices;  // extreme points of the base, ambient coords
  Vec apex;
  EmbeddedPolytope base;  // flattened base; base.flat is full-dimensional
  Polytope realized;      // conv(base vertices + apex)
  double height = 0.0;    // distance from apex to the base plane

  int dim() const { return static_cast<int>(apex.size()); }
  Vec base_centroid() const { return base.embed(base.flat.body_centroid()); }
  double base_measure() const { return base.flat.volume(); }
};

using Shape = std::variant<Polytope, Parallelotope, Ball, Cone>;

int shape_dim(const Shape& s);
std::string shape_kind(const Shape& s);  // polytope | parallelotope | ball | cone
std::string describe_shape(const Shape& s);  // one-line human summary
// The explicit polytope behind a shape, or nullptr (balls, and
// parallelotopes too high-dimensional to realize).
const Polytope* realized_polytope(const Shape& s);
void shape_bounding_box(const Shape& s, Vec& lo, Vec& hi);
double shape_diameter(const Shape& s);
bool shape_contains(const Shape& s, const Vec& x, double tol = kGeomTol);

}  // namespace jensen
