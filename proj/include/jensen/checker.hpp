#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jensen/convexfn.hpp"
#include "jensen/insphere.hpp"
#include "jensen/quadrature.hpp"
#include "jensen/shapes.hpp"

namespace jensen {

enum class Verdict { holds, violated, inconclusive };

std::string verdict_name(Verdict v);

// Outcome of one body-vs-boundary mean comparison. gap is
// boundaryMean - bodyMean; a certified sign requires |gap| to clear
// gapErrorBound, which sums the two estimate bounds (with a relative
// floor so exact paths still leave room for rounding).
struct GapResult {
  Estimate body_mean;
  Estimate boundary_mean;
  double gap = 0.0;
  double gap_error_bound = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string note;  // diagnostics when the verdict is inconclusive
};

// verdict semantics:
//   violated      gap < -gapErrorBound   (certified negative)
//   holds         gap >= 0               (consistent with the inequality)
//   inconclusive  otherwise, or a quadrature budget ran out
GapResult jensen_gap(const Shape& shape, const ConvexFn& f,
                     const QuadratureRequest& req = {});

struct SuiteEntry {
  std::string function;  // describe(f)
  GapResult result;
};

struct IdentityResidual {
  std::string name;
  double residual = 0.0;  // relative
};

struct JensenReport {
  std::string shape;
  std::vector<SuiteEntry> suite;  // one entry per suite function, input order
  double centroid_gap = 0.0;      // |body centroid - boundary centroid|
  std::optional<InsphereResult> insphere;   // when a realized polytope exists
  std::vector<IdentityResidual> identities;  // applicable measure identities
  bool counterexample_found = false;
  std::string conclusion;  // "counterexample found" | "consistent with Jensen-type"
  std::string caveat = "numerical evidence, not a proof";
};

// Runs jensen_gap for every suite function (in parallel, aggregated in
// input order) and attaches the shape-level diagnostics. Throws
// DegenerateInput on an empty suite.
JensenReport jensen_verdict(const Shape& shape, const std::vector<ConvexFn>& suite,
                            const QuadratureRequest& req = {});

// Mean over a solid cone vs the cone inequality's right-hand side
//   n/(n+1) * (mean of f over the base) + 1/(n+1) * f(apex).
struct ConeBoundResult {
  Estimate lhs;           // mean of f over the solid cone
  double rhs = 0.0;
  double rhs_bound = 0.0;  // error bound inherited from the base mean
  bool holds = false;      // lhs.value <= rhs + combined error bound
};

ConeBoundResult cone_bound_check(const Cone& cone, const ConvexFn& f,
                                 const QuadratureRequest& req = {});

// Bounds for polytopes whose insphere touches every facet:
//   theorem    n/(n+1) * boundaryMean + 1/(n+1) * f(s)
//   corollary  boundaryMean + (f(s) - f(m)) / (n+1)
// with s the insphere center and m the boundary centroid. Throws
// HypothesisViolated when the insphere misses a facet.
struct InsphereBoundResult {
  Estimate lhs;  // body mean
  double rhs_theorem = 0.0;
  double rhs_corollary = 0.0;
  double rhs_theorem_bound = 0.0;
  double rhs_corollary_bound = 0.0;
  bool holds_theorem = false;
  bool holds_corollary = false;
};

InsphereBoundResult insphere_bound_check(const Polytope& poly, const ConvexFn& f,
                                         const QuadratureRequest& req = {});

}  // namespace jensen
