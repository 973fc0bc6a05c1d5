#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jensen/checker.hpp"
#include "jensen/convexfn.hpp"
#include "jensen/shapes.hpp"

namespace jensen {

struct SearchTrace {
  std::vector<double> restart_best;  // best objective per restart, final stage
  std::int64_t evaluations = 0;      // objective evaluations spent overall
  bool budget_exhausted = false;
  std::string note;  // set when the budget ran out mid-search
};

// The objective is bodyMean - boundaryMean, so positive values certify a
// violation of the body-vs-boundary inequality.
struct SearchResult {
  MaxAffine best_function;
  double best_violation = 0.0;  // objective at search tolerance
  GapResult certificate;        // same function re-checked at 1e-7
  SearchTrace trace;
};

// Exact solution of the affine case: the violation of f(x) = a.x over
// |a|_2 <= 1 is maximized by the unit vector along
// bodyCentroid - boundaryCentroid, with value equal to the centroid gap.
// Returns a zero direction and value 0 when the centroids coincide.
std::pair<Vec, double> affine_worst_case(const Shape& shape);

// Derivative-free multistart search for a violating max-affine function with
// the given piece count: coordinate pattern search (initial step 0.25 of the
// coefficient box, geometric shrink 0.5) from `restarts` seeded random starts
// run in parallel, constrained to |a_j|_inf <= 1, |b_j| <= diameter(shape).
// Piece counts build up incrementally; each stage seeds one restart from the
// previous stage's winner, so the certified value is monotone in `pieces`.
// `budget` caps total objective evaluations; exhaustion is reported in the
// trace and the best point reached is still returned. Selection is
// deterministic: max value, ties broken by restart index.
SearchResult maxaffine_search(const Shape& shape, int pieces, int restarts,
                              std::int64_t budget, std::uint64_t seed);

}  // namespace jensen
