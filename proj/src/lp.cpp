#include "jensen/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace jensen {

namespace {
constexpr double kRcTol = 1e-9;    // reduced-cost threshold for entering columns
constexpr double kPivTol = 1e-10;  // smallest acceptable pivot magnitude
}  // namespace

// Dense two-phase tableau simplex. Free variables are split x = p - q; rows
// with negative right-hand side are negated and given an artificial variable.
// Bland's rule on both the entering and leaving choice prevents cycling.
LpResult lp_maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A,
                     const Eigen::VectorXd& b, int max_iterations) {
  const int n = static_cast<int>(c.size());
  const int m = static_cast<int>(A.rows());
  if (A.cols() != n || b.size() != m)
    throw DimensionMismatch("lp_maximize: inconsistent dimensions of c, A, b");
  if (n == 0 || m == 0) throw DimensionMismatch("lp_maximize: empty problem");

  const int npq = 2 * n;
  int n_art = 0;
  for (int i = 0; i < m; ++i)
    if (b[i] < 0) ++n_art;
  int ncols = npq + m + n_art;

  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, ncols);
  Eigen::VectorXd rhs(m);
  std::vector<int> basis(m);
  {
    int art = 0;
    for (int i = 0; i < m; ++i) {
      double sg = (b[i] < 0) ? -1.0 : 1.0;
      for (int j = 0; j < n; ++j) {
        T(i, j) = sg * A(i, j);
        T(i, n + j) = -sg * A(i, j);
      }
      T(i, npq + i) = sg;
      rhs[i] = sg * b[i];
      if (sg < 0) {
        int col = npq + m + art++;
        T(i, col) = 1.0;
        basis[i] = col;
      } else {
        basis[i] = npq + i;
      }
    }
  }

  int nrows = m;
  auto is_art = [&](int j) { return j >= npq + m; };

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols);
  int iterations = 0;

  auto pivot = [&](int row, int col) {
    double p = T(row, col);
    T.row(row) /= p;
    rhs[row] /= p;
    for (int i = 0; i < nrows; ++i) {
      if (i == row) continue;
      double f = T(i, col);
      if (f != 0.0) {
        T.row(i) -= f * T.row(row);
        rhs[i] -= f * rhs[row];
      }
    }
    basis[row] = col;
    if (rhs[row] < 0 && rhs[row] > -1e-11) rhs[row] = 0.0;
  };

  auto reduced_costs = [&]() {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(nrows);
    for (int i = 0; i < nrows; ++i) y[i] = cost[basis[i]];
    Eigen::VectorXd r = cost.head(ncols) - T.topRows(nrows).transpose() * y;
    for (int i = 0; i < nrows; ++i) r[basis[i]] = 0.0;
    return r;
  };

  // Returns true on optimal, false on unbounded.
  auto run = [&](bool phase1) -> bool {
    for (;;) {
      if (++iterations > max_iterations)
        throw NumericalFailure("lp_maximize: simplex iteration cap exceeded");
      Eigen::VectorXd r = reduced_costs();
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (!phase1 && is_art(j)) continue;
        if (r[j] > kRcTol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < nrows; ++i) {
        if (T(i, enter) > kPivTol) {
          double ratio = rhs[i] / T(i, enter);
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && (leave < 0 || basis[i] < basis[leave]))) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  LpResult out;
  const double ftol = 1e-8 * (1.0 + b.cwiseAbs().maxCoeff());

  if (n_art > 0) {
    for (int j = npq + m; j < ncols; ++j) cost[j] = -1.0;
    if (!run(true))
      throw NumericalFailure("lp_maximize: phase 1 reported unbounded");
    double art_sum = 0.0;
    for (int i = 0; i < nrows; ++i)
      if (is_art(basis[i])) art_sum += rhs[i];
    if (art_sum > ftol) {
      out.status = LpStatus::Infeasible;
      out.iterations = iterations;
      return out;
    }
    // Pivot remaining artificials out of the basis; drop redundant rows.
    std::vector<int> keep;
    for (int i = 0; i < nrows; ++i) {
      if (!is_art(basis[i])) {
        keep.push_back(i);
        continue;
      }
      int col = -1;
      double mag = 1e-7;
      for (int j = 0; j < npq + m; ++j) {
        if (std::abs(T(i, j)) > mag) {
          mag = std::abs(T(i, j));
          col = j;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        keep.push_back(i);
      }
    }
    if (static_cast<int>(keep.size()) < nrows) {
      Eigen::MatrixXd T2(static_cast<int>(keep.size()), ncols);
      Eigen::VectorXd rhs2(static_cast<int>(keep.size()));
      std::vector<int> basis2;
      for (size_t k = 0; k < keep.size(); ++k) {
        T2.row(static_cast<int>(k)) = T.row(keep[k]);
        rhs2[static_cast<int>(k)] = rhs[keep[k]];
        basis2.push_back(basis[keep[k]]);
      }
      T = std::move(T2);
      rhs = std::move(rhs2);
      basis = std::move(basis2);
      nrows = static_cast<int>(basis.size());
    }
    ncols = npq + m;
    T.conservativeResize(nrows, ncols);
    cost = Eigen::VectorXd::Zero(ncols);
  }

  for (int j = 0; j < n; ++j) {
    cost[j] = c[j];
    cost[n + j] = -c[j];
  }
  bool optimal = run(false);

  auto value_of = [&](int col) -> double {
    for (int i = 0; i < nrows; ++i)
      if (basis[i] == col) return rhs[i];
    return 0.0;
  };

  out.x = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) out.x[j] = value_of(j) - value_of(n + j);
  out.iterations = iterations;

  if (!optimal) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  out.value = c.dot(out.x);
  out.slack = b - A * out.x;

  Eigen::VectorXd r = reduced_costs();
  out.dual = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    double y = -r[npq + i];
    out.dual[i] = (y > 0.0) ? y : 0.0;
  }

  // Alternate optimum: a nonbasic structural column with ~zero reduced cost
  // that either pivots to a different point (positive ratio) or rides an
  // optimal ray.
  std::vector<bool> in_basis(ncols, false);
  for (int i = 0; i < nrows; ++i) in_basis[basis[i]] = true;
  for (int j = 0; j < ncols && !out.alternate_optimum; ++j) {
    if (in_basis[j] || std::abs(r[j]) > kRcTol) continue;
    // A split column whose partner is basic only rides the p/q representation
    // ray; x does not change along it.
    if (j < npq) {
      int partner = (j < n) ? j + n : j - n;
      if (in_basis[partner]) continue;
    }
    bool any_pivot = false;
    double min_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nrows; ++i) {
      if (T(i, j) > kPivTol) {
        any_pivot = true;
        min_ratio = std::min(min_ratio, rhs[i] / T(i, j));
      }
    }
    if (!any_pivot || min_ratio > 1e-9) out.alternate_optimum = true;
  }
  return out;
}

}  // namespace jensen
