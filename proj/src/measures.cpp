#include "jensen/measures.hpp"

#include <cmath>

namespace jensen {

double ball_volume(int n, double r) {
  return std::pow(M_PI, 0.5 * n) * std::pow(r, n) / std::tgamma(0.5 * n + 1.0);
}

double sphere_measure(int n, double r) {
  return 2.0 * std::pow(M_PI, 0.5 * n) * std::pow(r, n - 1) / std::tgamma(0.5 * n);
}

double shape_volume(const Shape& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p->volume();
  if (const auto* p = std::get_if<Parallelotope>(&s))
    return std::abs(p->edges.determinant());
  if (const auto* b = std::get_if<Ball>(&s)) return ball_volume(b->dim(), b->radius);
  return std::get<Cone>(s).realized.volume();
}

double shape_surface(const Shape& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p->surface_measure();
  if (const auto* p = std::get_if<Parallelotope>(&s)) {
    double total = 0.0;
    for (int i = 0; i < p->dim(); ++i) total += 2.0 * p->facet_pair_measure(i);
    return total;
  }
  if (const auto* b = std::get_if<Ball>(&s)) return sphere_measure(b->dim(), b->radius);
  return std::get<Cone>(s).realized.surface_measure();
}

Vec shape_body_centroid(const Shape& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p->body_centroid();
  if (const auto* p = std::get_if<Parallelotope>(&s)) return p->center();
  if (const auto* b = std::get_if<Ball>(&s)) return b->center;
  return std::get<Cone>(s).realized.body_centroid();
}

Vec shape_boundary_centroid(const Shape& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p->boundary_centroid();
  // Opposite parallelotope facets pair up symmetrically about the center.
  if (const auto* p = std::get_if<Parallelotope>(&s)) return p->center();
  if (const auto* b = std::get_if<Ball>(&s)) return b->center;
  return std::get<Cone>(s).realized.boundary_centroid();
}

CentroidReport centroid_report(const Shape& s) {
  CentroidReport r;
  r.body_centroid = shape_body_centroid(s);
  r.boundary_centroid = shape_boundary_centroid(s);
  r.gap = (r.body_centroid - r.boundary_centroid).norm();
  r.coincide = r.gap < kCentroidTol;
  return r;
}

double cone_volume_identity_residual(const Cone& c) {
  double vol = c.realized.volume();
  double predicted = c.height * c.base_measure() / static_cast<double>(c.dim());
  return std::abs(vol - predicted) / vol;
}

double minkowski_identity_residual(const Polytope& P, double inradius) {
  double predicted = inradius * P.surface_measure() / static_cast<double>(P.dim());
  return std::abs(P.volume() - predicted) / P.volume();
}

}  // namespace jensen
