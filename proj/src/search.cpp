#include "jensen/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "jensen/errors.hpp"
#include "jensen/measures.hpp"
#include "jensen/quadrature.hpp"
#include "jensen/rng.hpp"

namespace jensen {
namespace {

constexpr double kSearchStep0 = 0.25;
constexpr double kSearchStepMin = 1e-3;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Parameter layout: per piece, n slope entries then the intercept. Slopes
// live in [-1, 1], intercepts in [-diameter, diameter].
MaxAffine unpack(const std::vector<double>& th, int pieces, int n) {
  std::vector<Affine> ps;
  ps.reserve(pieces);
  for (int j = 0; j < pieces; ++j) {
    Vec a(n);
    for (int i = 0; i < n; ++i) a[i] = th[j * (n + 1) + i];
    ps.push_back({a, th[j * (n + 1) + n]});
  }
  return MaxAffine(ps);
}

double objective(const Shape& shape, const std::vector<double>& th, int pieces,
                 int n, const QuadratureRequest& req) {
  MaxAffine f = unpack(th, pieces, n);
  try {
    return mean_over_body(shape, f, req).value - mean_over_boundary(shape, f, req).value;
  } catch (const BudgetExceeded&) {
    return kNegInf;  // unusable candidate; the search budget still ticks
  }
}

struct RestartOutcome {
  std::vector<double> th;
  double value = kNegInf;
  std::int64_t evals = 0;
  bool exhausted = false;
};

// One pattern-search descent with a private evaluation slice, so concurrent
// restarts stay bitwise deterministic.
RestartOutcome run_restart(const Shape& shape, std::vector<double> th, int pieces,
                           int n, double diameter, std::int64_t slice,
                           const QuadratureRequest& req) {
  const int m = pieces * (n + 1);
  auto scale = [&](int i) { return (i % (n + 1)) == n ? diameter : 1.0; };
  auto clamp = [&](double v, int i) { return std::clamp(v, -scale(i), scale(i)); };

  RestartOutcome out;
  out.th = th;
  if (slice < 1) {
    out.exhausted = true;
    return out;
  }
  out.value = objective(shape, th, pieces, n, req);
  out.evals = 1;

  double step = kSearchStep0;
  while (step >= kSearchStepMin) {
    if (out.evals + 2 * m > slice) {
      out.exhausted = true;
      break;
    }
    double poll_best = kNegInf;
    int poll_i = -1;
    double poll_v = 0.0;
    for (int i = 0; i < m; ++i) {
      for (double dir : {1.0, -1.0}) {
        double cand = clamp(out.th[i] + dir * step * scale(i), i);
        if (cand == out.th[i]) continue;  // clamped into place: same point
        std::vector<double> probe = out.th;
        probe[i] = cand;
        double v = objective(shape, probe, pieces, n, req);
        ++out.evals;
        if (v > poll_best) {
          poll_best = v;
          poll_i = i;
          poll_v = cand;
        }
      }
    }
    if (poll_i >= 0 && poll_best > out.value + 1e-13) {
      out.th[poll_i] = poll_v;
      out.value = poll_best;
    } else {
      step *= 0.5;
    }
  }
  return out;
}

}  // namespace

std::pair<Vec, double> affine_worst_case(const Shape& shape) {
  Vec d = shape_body_centroid(shape) - shape_boundary_centroid(shape);
  double gap = d.norm();
  if (gap < 1e-14) return {Vec::Zero(shape_dim(shape)), 0.0};
  return {d / gap, gap};
}

SearchResult maxaffine_search(const Shape& shape, int pieces, int restarts,
                              std::int64_t budget, std::uint64_t seed) {
  if (pieces < 1) throw DegenerateInput("maxaffine_search: pieces must be >= 1");
  if (restarts < 1) throw DegenerateInput("maxaffine_search: restarts must be >= 1");
  if (budget < 1) throw DegenerateInput("maxaffine_search: budget must be >= 1");

  const int n = shape_dim(shape);
  const double diameter = shape_diameter(shape);
  QuadratureRequest search_req;
  search_req.target_error = 1e-5;

  SearchResult result;
  std::vector<double> best_th;  // global winner, at its own piece count
  int best_pieces = 0;
  double best_value = kNegInf;

  // Stage kk searches kk-piece functions; stage budgets split evenly and
  // restart 0 of each later stage resumes from the previous winner padded
  // with a duplicate piece (same function, one more degree of freedom).
  for (int kk = 1; kk <= pieces; ++kk) {
    const int m = kk * (n + 1);
    const std::int64_t stage_budget = budget / pieces;
    const std::int64_t slice = std::max<std::int64_t>(1, stage_budget / restarts);

    std::vector<std::vector<double>> inits(restarts);
    for (int r = 0; r < restarts; ++r) {
      Rng rng(derive_seed(seed, (std::uint64_t(kk) << 16) | std::uint64_t(r)));
      inits[r].resize(m);
      for (int j = 0; j < kk; ++j) {
        for (int i = 0; i < n; ++i) inits[r][j * (n + 1) + i] = rng.uniform(-1.0, 1.0);
        inits[r][j * (n + 1) + n] = rng.uniform(-diameter, diameter);
      }
    }
    if (kk > 1) {
      std::vector<double> warm = best_th;
      for (int wp = best_pieces; wp < kk; ++wp)
        warm.insert(warm.end(), warm.end() - (n + 1), warm.end());
      inits[0] = warm;
    }

    std::vector<RestartOutcome> outs(restarts);
    long hw = static_cast<long>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 4;
    long workers = std::min<long>(restarts, std::min<long>(hw, 8));
    if (workers <= 1) {
      for (int r = 0; r < restarts; ++r)
        outs[r] = run_restart(shape, inits[r], kk, n, diameter, slice, search_req);
    } else {
      std::vector<std::future<void>> tasks;
      for (long w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
          for (int r = static_cast<int>(w); r < restarts; r += workers)
            outs[r] = run_restart(shape, inits[r], kk, n, diameter, slice, search_req);
        }));
      }
      for (auto& t : tasks) t.get();
    }

    if (kk == pieces) {
      result.trace.restart_best.resize(restarts);
      for (int r = 0; r < restarts; ++r) result.trace.restart_best[r] = outs[r].value;
    }
    if (best_th.empty()) {
      best_th = outs[0].th;
      best_value = outs[0].value;
      best_pieces = kk;
    }
    for (int r = 0; r < restarts; ++r) {
      result.trace.evaluations += outs[r].evals;
      result.trace.budget_exhausted |= outs[r].exhausted;
      if (outs[r].value > best_value) {
        best_value = outs[r].value;
        best_th = outs[r].th;
        best_pieces = kk;
      }
    }
  }

  if (result.trace.budget_exhausted)
    result.trace.note =
        "evaluation budget ran out before every restart converged; "
        "best point reached is reported";

  // Pad the winner up to the requested piece count (duplicates change nothing).
  while (best_pieces < pieces) {
    best_th.insert(best_th.end(), best_th.end() - (n + 1), best_th.end());
    ++best_pieces;
  }
  result.best_function = unpack(best_th, pieces, n);
  result.best_violation = best_value;

  QuadratureRequest cert_req;
  cert_req.target_error = 1e-7;
  result.certificate = jensen_gap(shape, result.best_function, cert_req);
  return result;
}

}  // namespace jensen
