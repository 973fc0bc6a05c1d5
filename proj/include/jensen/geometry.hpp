#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "jensen/errors.hpp"

namespace jensen {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Hyperplane residual and vertex dedup tolerance.
constexpr double kGeomTol = 1e-9;
// Unit-normal tolerance.
constexpr double kUnitTol = 1e-12;

// Closed halfspace {x : normal.dot(x) <= offset} with unit normal.
struct HalfSpace {
  Vec normal;
  double offset = 0.0;

  HalfSpace() = default;
  // Normalizes to unit length; throws DegenerateInput on a near-zero normal.
  HalfSpace(const Vec& n, double d);

  // Signed distance to the boundary plane (positive outside).
  double residual(const Vec& x) const { return normal.dot(x) - offset; }
};

// k-dimensional simplex embedded in R^n; columns of `vertices` are the k+1 vertices.
struct Simplex {
  Mat vertices;

  int kdim() const { return static_cast<int>(vertices.cols()) - 1; }
  int ambient() const { return static_cast<int>(vertices.rows()); }

  // k-volume via the Gram determinant; a 0-simplex has measure 1 (counting measure).
  double measure() const;
  Vec centroid() const;
  // Vertex index pair of a longest edge.
  std::pair<int, int> longest_edge() const;
  double diameter() const;
};

struct Facet {
  HalfSpace plane;
  std::vector<int> vertices;  // indices into the polytope vertex list, sorted
};

namespace detail {
struct PolytopeData;
}

// Immutable bounded convex polytope with cached triangulations and measures.
class Polytope {
 public:
  // An empty polytope; only useful as an assignment target.
  Polytope() = default;

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Simplex>& body_triangulation() const { return body_; }
  // Pairs (facet id, (n-1)-simplex).
  const std::vector<std::pair<int, Simplex>>& boundary_triangulation() const {
    return boundary_;
  }

  double volume() const { return volume_; }
  double surface_measure() const { return surface_; }
  const Vec& body_centroid() const { return body_centroid_; }
  const Vec& boundary_centroid() const { return boundary_centroid_; }
  double facet_measure(int facet_id) const { return facet_measures_.at(facet_id); }

  bool contains(const Vec& x, double tol = kGeomTol) const;
  void bounding_box(Vec& lo, Vec& hi) const;
  double diameter() const;

 private:
  friend struct detail::PolytopeData;

  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
  std::vector<Simplex> body_;
  std::vector<std::pair<int, Simplex>> boundary_;
  std::vector<double> facet_measures_;
  double volume_ = 0.0;
  double surface_ = 0.0;
  Vec body_centroid_;
  Vec boundary_centroid_;
};

// Convex hull of a point set, dimensions 2..4. Drops non-extreme points.
// Throws DegenerateInput if the points do not affinely span R^n,
// UnsupportedDimension outside 2..4.
Polytope polytope_from_vertices(const std::vector<Vec>& points);

// Bounded intersection of halfspaces, dimensions 2..4. Throws EmptyRegion or
// UnboundedRegion as appropriate, DegenerateInput if the region is not
// full-dimensional, UnsupportedDimension outside 2..4.
Polytope polytope_from_halfspaces(const std::vector<HalfSpace>& halfspaces);

// An (n-1)-dimensional polytope living on a hyperplane in R^n.
// `flat` is full-dimensional in local coordinates; embed/local convert points.
struct EmbeddedPolytope {
  Polytope flat;
  Vec origin;  // a point on the hyperplane
  Mat basis;   // n x (n-1), orthonormal columns

  int ambient() const { return static_cast<int>(basis.rows()); }
  Vec embed(const Vec& y) const { return origin + basis * y; }
  Vec local(const Vec& x) const { return basis.transpose() * (x - origin); }
};

// Builds the flat polytope spanned by coplanar points (affine rank exactly n-1
// within tol); origin is the vertex average. Throws DegenerateInput otherwise.
EmbeddedPolytope flatten_points(const std::vector<Vec>& points, double tol = kGeomTol);

// Facet of P as a flat (n-1)-polytope; basis completes the facet normal.
EmbeddedPolytope facet_flat(const Polytope& P, int facet_id);

// Affine rank of a point set (unit-scale geometry; singular values above
// 1e-7 * max(1, sigma_max) count).
int affine_rank(const std::vector<Vec>& points);

// Orthonormal basis of the complement of a unit vector, as n x (n-1) columns.
Mat orthonormal_complement(const Vec& unit);

namespace detail {
// Internal builders supporting dimension 1 (intervals) for flat recursion.
Polytope build_polytope(const std::vector<Vec>& points, int n);
Polytope build_from_halfspaces(const std::vector<HalfSpace>& halfspaces, int n);
}  // namespace detail

}  // namespace jensen
