#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "jensen/convexfn.hpp"
#include "jensen/geometry.hpp"
#include "jensen/shapes.hpp"

namespace jensen {

enum class Method { exact, quadrature, monte_carlo };

std::string method_name(Method m);

// A computed mean with an honest absolute error bound. errorBound is 0
// exactly when the value came from a closed form; monte-carlo bounds are
// 3x the standard error.
struct Estimate {
  double value = 0.0;
  double error_bound = 0.0;
  Method method = Method::exact;
  std::int64_t evaluations = 0;
};

struct QuadratureRequest {
  double target_error = 1e-6;     // deterministic paths, absolute on the mean
  double mc_target_error = 1e-4;  // monte-carlo paths, 3x stderr target
  int max_subdivisions = 12;
  std::uint64_t seed = 0;
  std::int64_t max_evaluations = std::int64_t(1) << 26;
};

// Mean of f over the segment [a, b]: exact midpoint value for affine forms,
// otherwise a composite 16-node Gauss-Legendre rule whose panel count doubles
// until two successive levels agree within target_error.
Estimate mean_over_segment(const ConvexFn& f, const Vec& a, const Vec& b,
                           const QuadratureRequest& req = {});

// Mean of f over the solid shape.
Estimate mean_over_body(const Shape& shape, const ConvexFn& f,
                        const QuadratureRequest& req = {});

// Mean of f over the shape's boundary surface.
Estimate mean_over_boundary(const Shape& shape, const ConvexFn& f,
                            const QuadratureRequest& req = {});

// Mean of the ambient function f over an embedded lower-dimensional flat
// body (e.g. a cone base living inside R^n).
Estimate mean_over_flat(const EmbeddedPolytope& flat, const ConvexFn& f,
                        const QuadratureRequest& req = {});

namespace detail {

// Degree-3 simplex rule (k+2 nodes, exact through cubics): mean of f over
// one k-simplex. Exposed so tests can validate its moments directly.
double simplex_rule_mean(const std::function<double(const Vec&)>& f, const Simplex& s);

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre recurrence.
void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace detail

}  // namespace jensen
