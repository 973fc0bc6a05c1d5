#include "jensen/shapes.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

namespace jensen {

double Parallelotope::facet_pair_measure(int i) const {
  int n = dim();
  Mat sub(n, n - 1);
  int c = 0;
  for (int j = 0; j < n; ++j)
    if (j != i) sub.col(c++) = edges.col(j);
  double g = (sub.transpose() * sub).determinant();
  return std::sqrt(std::max(g, 0.0));
}

int shape_dim(const Shape& s) {
  return std::visit([](const auto& v) { return v.dim(); }, s);
}

std::string shape_kind(const Shape& s) {
  struct {
    std::string operator()(const Polytope&) const { return "polytope"; }
    std::string operator()(const Parallelotope&) const { return "parallelotope"; }
    std::string operator()(const Ball&) const { return "ball"; }
    std::string operator()(const Cone&) const { return "cone"; }
  } kind;
  return std::visit(kind, s);
}

const Polytope* realized_polytope(const Shape& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p;
  if (const auto* p = std::get_if<Parallelotope>(&s))
    return p->realized ? &*p->realized : nullptr;
  if (const auto* c = std::get_if<Cone>(&s)) return &c->realized;
  return nullptr;
}

std::string describe_shape(const Shape& s) {
  char buf[128];
  if (const auto* p = std::get_if<Polytope>(&s)) {
    std::snprintf(buf, sizeof buf, "polytope in R^%d, %zu vertices, %zu facets",
                  p->dim(), p->vertices().size(), p->facets().size());
  } else if (const auto* p = std::get_if<Parallelotope>(&s)) {
    std::snprintf(buf, sizeof buf, "parallelotope in R^%d", p->dim());
  } else if (const auto* b = std::get_if<Ball>(&s)) {
    std::snprintf(buf, sizeof buf, "ball in R^%d, radius %.6g", b->dim(), b->radius);
  } else {
    const Cone& c = std::get<Cone>(s);
    std::snprintf(buf, sizeof buf, "cone in R^%d over a %zu-vertex base, height %.6g",
                  c.dim(), c.base_vertices.size(), c.height);
  }
  return buf;
}

void shape_bounding_box(const Shape& s, Vec& lo, Vec& hi) {
  if (const auto* p = std::get_if<Polytope>(&s)) {
    p->bounding_box(lo, hi);
  } else if (const auto* p = std::get_if<Parallelotope>(&s)) {
    lo = p->origin;
    hi = p->origin;
    for (int j = 0; j < p->dim(); ++j) {
      Vec e = p->edges.col(j);
      lo += e.cwiseMin(Vec::Zero(p->dim()));
      hi += e.cwiseMax(Vec::Zero(p->dim()));
    }
  } else if (const auto* b = std::get_if<Ball>(&s)) {
    lo = b->center.array() - b->radius;
    hi = b->center.array() + b->radius;
  } else {
    const Cone& c = std::get<Cone>(s);
    c.realized.bounding_box(lo, hi);
  }
}

double shape_diameter(const Shape& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p->diameter();
  if (const auto* b = std::get_if<Ball>(&s)) return 2.0 * b->radius;
  if (const auto* c = std::get_if<Cone>(&s)) return c->realized.diameter();
  const Parallelotope& p = std::get<Parallelotope>(s);
  // Diameter of a parallelotope: the longest corner-to-corner diagonal.
  int n = p.dim();
  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vec d = Vec::Zero(n);
    for (int j = 0; j < n; ++j) d += ((mask & (1u << j)) ? 1.0 : -1.0) * p.edges.col(j);
    best = std::max(best, d.norm());
  }
  return best;
}

bool shape_contains(const Shape& s, const Vec& x, double tol) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p->contains(x, tol);
  if (const auto* b = std::get_if<Ball>(&s)) return (x - b->center).norm() <= b->radius + tol;
  if (const auto* c = std::get_if<Cone>(&s)) return c->realized.contains(x, tol);
  const Parallelotope& p = std::get<Parallelotope>(s);
  Vec t = p.edges.fullPivLu().solve(x - p.origin);
  return t.minCoeff() >= -tol && t.maxCoeff() <= 1.0 + tol;
}

}  // namespace jensen
