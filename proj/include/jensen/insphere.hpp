#pragma once

#include "jensen/geometry.hpp"

namespace jensen {

// Absolute per-facet gap below which the inscribed ball counts as tangent.
constexpr double kTangencyTol = 1e-7;

struct InsphereResult {
  Vec center;
  double radius = 0.0;
  Vec facet_gaps;  // offset_i - normal_i . center - radius, one per facet
  double worst_facet_gap = 0.0;
  bool tangent_to_all = false;
  bool center_unique = true;
};

// Largest inscribed ball via the LP  max r  s.t.  normal_i . x + r <= offset_i.
InsphereResult chebyshev_center(const Polytope& P);

struct TangencyReport {
  InsphereResult insphere;
  std::vector<size_t> slack_facets;  // facets the insphere does not touch
};

TangencyReport tangency_report(const Polytope& P, double tol = kTangencyTol);

}  // namespace jensen
