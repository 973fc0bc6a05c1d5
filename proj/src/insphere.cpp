#include "jensen/insphere.hpp"

#include <cmath>

#include "jensen/lp.hpp"

namespace jensen {

InsphereResult chebyshev_center(const Polytope& P) {
  const int n = P.dim();
  const int m = static_cast<int>(P.facets().size());
  Mat A(m, n + 1);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i).head(n) = P.facets()[i].plane.normal.transpose();
    A(i, n) = 1.0;
    b[i] = P.facets()[i].plane.offset;
  }
  Vec c = Vec::Zero(n + 1);
  c[n] = 1.0;
  LpResult lp = lp_maximize(c, A, b);
  if (lp.status != LpStatus::Optimal || !(lp.value > 0.0))
    throw NumericalFailure("chebyshev_center: LP failed on a full-dimensional polytope");

  InsphereResult out;
  out.center = lp.x.head(n);
  out.radius = lp.value;
  out.facet_gaps = Vec(m);
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double gap = b[i] - P.facets()[i].plane.normal.dot(out.center) - out.radius;
    out.facet_gaps[i] = gap;
    worst = std::max(worst, gap);
  }
  out.worst_facet_gap = worst;
  out.tangent_to_all = worst < kTangencyTol;
  out.center_unique = !lp.alternate_optimum;
  return out;
}

TangencyReport tangency_report(const Polytope& P, double tol) {
  TangencyReport rep;
  rep.insphere = chebyshev_center(P);
  for (size_t i = 0; i < static_cast<size_t>(rep.insphere.facet_gaps.size()); ++i)
    if (rep.insphere.facet_gaps[i] >= tol) rep.slack_facets.push_back(i);
  return rep;
}

}  // namespace jensen
