#pragma once

#include <Eigen/Dense>

#include "jensen/errors.hpp"

namespace jensen {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  Eigen::VectorXd x;      // primal solution in the original (free) variables
  double value = 0.0;     // objective at x
  Eigen::VectorXd dual;   // row multipliers, >= 0, zero on slack rows
  Eigen::VectorXd slack;  // b - A x
  bool alternate_optimum = false;  // another optimal basis exists
  int iterations = 0;
};

// maximize c.dot(x) subject to A x <= b, x free.
// Dense two-phase tableau simplex with Bland's rule; intended for the small
// systems that arise here (tens of rows). Throws NumericalFailure if the
// iteration cap is hit.
LpResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& b, int max_iterations = 5000);

}  // namespace jensen
