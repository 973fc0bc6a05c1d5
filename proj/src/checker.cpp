#include "jensen/checker.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "jensen/errors.hpp"
#include "jensen/measures.hpp"

namespace jensen {
namespace {

// Rounding slack for comparisons between exact (errorBound = 0) values.
double comparison_floor(double a, double b) {
  return 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    default: return "inconclusive";
  }
}

GapResult jensen_gap(const Shape& shape, const ConvexFn& f,
                     const QuadratureRequest& req) {
  GapResult out;
  std::string failure;
  try {
    out.body_mean = mean_over_body(shape, f, req);
    out.boundary_mean = mean_over_boundary(shape, f, req);
  } catch (const BudgetExceeded& e) {
    failure = e.what();
  }
  if (!failure.empty()) {
    out.gap = 0.0;
    out.gap_error_bound = std::numeric_limits<double>::infinity();
    out.verdict = Verdict::inconclusive;
    out.note = failure;
    return out;
  }
  out.gap = out.boundary_mean.value - out.body_mean.value;
  out.gap_error_bound =
      std::max(out.body_mean.error_bound + out.boundary_mean.error_bound,
               comparison_floor(out.body_mean.value, out.boundary_mean.value));
  if (out.gap >= 0.0) {
    out.verdict = Verdict::holds;
  } else if (out.gap < -out.gap_error_bound) {
    out.verdict = Verdict::violated;
  } else {
    out.verdict = Verdict::inconclusive;
    out.note = "negative gap inside the error bound";
  }
  return out;
}

JensenReport jensen_verdict(const Shape& shape, const std::vector<ConvexFn>& suite,
                            const QuadratureRequest& req) {
  if (suite.empty()) throw DegenerateInput("jensen_verdict: empty function suite");

  JensenReport report;
  report.shape = describe_shape(shape);
  report.suite.resize(suite.size());

  // Independent gap checks run concurrently; results land at their input
  // index, so the report order never depends on scheduling.
  long hw = static_cast<long>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 4;
  long workers = std::min<long>(static_cast<long>(suite.size()), std::min<long>(hw, 8));
  auto run = [&](std::size_t i) {
    report.suite[i].function = describe(suite[i]);
    report.suite[i].result = jensen_gap(shape, suite[i], req);
  };
  if (workers <= 1) {
    for (std::size_t i = 0; i < suite.size(); ++i) run(i);
  } else {
    std::vector<std::future<void>> tasks;
    tasks.reserve(workers);
    for (long w = 0; w < workers; ++w) {
      tasks.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t i = w; i < suite.size(); i += workers) run(i);
      }));
    }
    for (auto& t : tasks) t.get();
  }

  report.centroid_gap = centroid_report(shape).gap;

  if (const Polytope* poly = realized_polytope(shape)) {
    report.insphere = chebyshev_center(*poly);
    if (report.insphere->tangent_to_all) {
      report.identities.push_back(
          {"n*vol = r*surf",
           minkowski_identity_residual(*poly, report.insphere->radius)});
    }
  }
  if (const auto* b = std::get_if<Ball>(&shape)) {
    double surf = sphere_measure(b->dim(), b->radius);
    double res = std::abs(b->dim() * ball_volume(b->dim(), b->radius) - surf) / surf;
    report.identities.push_back({"n*vol = surf", res});
  }
  if (const auto* c = std::get_if<Cone>(&shape)) {
    report.identities.push_back(
        {"n*vol = height*base", cone_volume_identity_residual(*c)});
  }

  for (const auto& entry : report.suite)
    if (entry.result.verdict == Verdict::violated) report.counterexample_found = true;
  report.conclusion =
      report.counterexample_found ? "counterexample found" : "consistent with Jensen-type";
  return report;
}

ConeBoundResult cone_bound_check(const Cone& cone, const ConvexFn& f,
                                 const QuadratureRequest& req) {
  const double n = static_cast<double>(cone.dim());
  ConeBoundResult out;
  out.lhs = mean_over_body(Shape{cone}, f, req);
  Estimate base = mean_over_flat(cone.base, f, req);
  out.rhs = (n * base.value + evaluate(f, cone.apex)) / (n + 1.0);
  out.rhs_bound = n / (n + 1.0) * base.error_bound;
  double slack =
      out.lhs.error_bound + out.rhs_bound + comparison_floor(out.lhs.value, out.rhs);
  out.holds = out.lhs.value <= out.rhs + slack;
  return out;
}

InsphereBoundResult insphere_bound_check(const Polytope& poly, const ConvexFn& f,
                                         const QuadratureRequest& req) {
  InsphereResult ins = chebyshev_center(poly);
  if (!ins.tangent_to_all)
    throw HypothesisViolated(
        "insphere_bound_check: insphere does not touch every facet (worst gap " +
        std::to_string(ins.worst_facet_gap) + ")");

  const Shape shape{poly};
  const double n = static_cast<double>(poly.dim());
  InsphereBoundResult out;
  out.lhs = mean_over_body(shape, f, req);
  Estimate bnd = mean_over_boundary(shape, f, req);
  const double fs = evaluate(f, ins.center);
  const double fm = evaluate(f, shape_boundary_centroid(shape));

  out.rhs_theorem = (n * bnd.value + fs) / (n + 1.0);
  out.rhs_theorem_bound = n / (n + 1.0) * bnd.error_bound;
  out.rhs_corollary = bnd.value + (fs - fm) / (n + 1.0);
  out.rhs_corollary_bound = bnd.error_bound;

  double slack_t = out.lhs.error_bound + out.rhs_theorem_bound +
                   comparison_floor(out.lhs.value, out.rhs_theorem);
  double slack_c = out.lhs.error_bound + out.rhs_corollary_bound +
                   comparison_floor(out.lhs.value, out.rhs_corollary);
  out.holds_theorem = out.lhs.value <= out.rhs_theorem + slack_t;
  out.holds_corollary = out.lhs.value <= out.rhs_corollary + slack_c;
  return out;
}

}  // namespace jensen
