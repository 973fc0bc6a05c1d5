#include "jensen/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numeric>
#include <thread>

#include "jensen/measures.hpp"
#include "jensen/rng.hpp"

namespace jensen {

namespace {

using RawFn = std::function<double(const Vec&)>;

// Roots for the adaptive engine: ambient vertex matrix plus k-measure.
struct Root {
  Mat vertices;
  double measure;
};

double quad_floor(double value) { return 1e-16 * (1.0 + std::abs(value)); }

// Run body(i) for i in [0, n), strided across a small thread pool. Each index
// is touched by exactly one task, so per-index state needs no locking.
template <typename Body>
void parallel_indexed(std::int64_t n, const Body& body) {
  long hw = static_cast<long>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 4;
  long workers = std::min<long>(std::min<long>(n, hw), 8);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::future<void>> tasks;
  tasks.reserve(workers);
  for (long w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&, w] {
      for (std::int64_t i = w; i < n; i += workers) body(i);
    }));
  }
  for (auto& t : tasks) t.get();
}

double rule_mean(const RawFn& f, const Mat& V) {
  const int k = static_cast<int>(V.cols()) - 1;
  const double wc = -double((k + 1) * (k + 1)) / (4.0 * (k + 2));
  const double wp = double((k + 3) * (k + 3)) / (4.0 * (k + 1) * (k + 2));
  Vec S = V.rowwise().sum();
  double acc = wc * f(S / (k + 1));
  for (int i = 0; i <= k; ++i) acc += wp * f((S + 2.0 * V.col(i)) / (k + 3));
  return acc;
}

std::pair<int, int> longest_edge_of(const Mat& V) {
  int bi = 0, bj = 1;
  double best = -1.0;
  for (int i = 0; i < V.cols(); ++i)
    for (int j = i + 1; j < V.cols(); ++j) {
      double d = (V.col(i) - V.col(j)).squaredNorm();
      if (d > best) {
        best = d;
        bi = i;
        bj = j;
      }
    }
  return {bi, bj};
}

struct RootOut {
  double integral = 0.0;
  double err = 0.0;
  std::int64_t evals = 0;
  bool budget_hit = false;
};

// Appends the 2^levels leaves obtained from `levels` successive longest-edge
// bisections below V (each child re-picks its own longest edge).
void expand_round(const Mat& V, int levels, std::vector<Mat>& leaves) {
  if (levels == 0) {
    leaves.push_back(V);
    return;
  }
  auto [ia, ib] = longest_edge_of(V);
  Mat VA = V;
  VA.col(ib) = 0.5 * (V.col(ia) + V.col(ib));
  Mat VB = V;
  VB.col(ia) = VA.col(ib);
  expand_round(VA, levels - 1, leaves);
  expand_round(VB, levels - 1, leaves);
}

// Depth-first refinement in rounds. One round is a full sweep of k+1
// longest-edge bisections, which halves the diameter in every direction.
// Comparing the rule across a whole round keeps the discrepancy honest:
// a single bisection can leave the dominant error direction untouched, so
// parent and children agree while both are wrong (anisotropic smooth
// integrands and kinks along the split direction both trigger this).
// `mean0` is the rule value for V, computed by the caller so every simplex
// is evaluated exactly once, and `tol` is this subtree's share of the
// integral-space tolerance. Accepted leaves contribute three times their
// discrepancy to the reported bound as a safety margin.
void adapt_rec(const RawFn& f, const Mat& V, double mu, double mean0, double tol,
               int round, int max_rounds, std::int64_t budget, RootOut& out) {
  std::vector<Mat> leaves;
  leaves.reserve(std::size_t{1} << V.cols());
  expand_round(V, static_cast<int>(V.cols()), leaves);
  const double mu_leaf = mu / static_cast<double>(leaves.size());
  std::vector<double> means(leaves.size());
  double refined = 0.0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    means[i] = rule_mean(f, leaves[i]);
    refined += mu_leaf * means[i];
  }
  out.evals += static_cast<std::int64_t>(leaves.size()) * (V.cols() + 1);
  double disc = std::abs(mean0 * mu - refined);
  bool can_split = round + 1 < max_rounds && out.evals < budget;
  if (3.0 * disc <= tol || !can_split) {
    out.integral += refined;
    out.err += 3.0 * disc;
    if (3.0 * disc > tol) out.budget_hit = true;
    return;
  }
  const double tol_leaf = tol / static_cast<double>(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i)
    adapt_rec(f, leaves[i], mu_leaf, means[i], tol_leaf, round + 1, max_rounds,
              budget, out);
}

struct EngineStats {
  double mean = 0.0;
  double bound = 0.0;  // absolute, on the mean
  std::int64_t evals = 0;
  bool budget_hit = false;
};

// `max_rounds` counts diameter-halving rounds (one full bisection sweep per
// round), matching the panel-halving levels of the segment engine.
EngineStats adaptive_mean(const std::vector<Root>& roots, const RawFn& f,
                          double target_error, int max_rounds,
                          std::int64_t max_evals) {
  double mu_total = 0.0;
  for (const Root& r : roots) mu_total += r.measure;
  if (!(mu_total > 0.0)) throw DegenerateInput("quadrature domain has zero measure");
  double tol_total = target_error * mu_total;
  std::vector<RootOut> outs(roots.size());
  parallel_indexed(static_cast<std::int64_t>(roots.size()), [&](std::int64_t i) {
    const Root& r = roots[i];
    if (!(r.measure > 0.0)) return;
    double share = r.measure / mu_total;
    std::int64_t budget =
        std::max<std::int64_t>(2048, static_cast<std::int64_t>(max_evals * share));
    RootOut& o = outs[i];
    double m0 = rule_mean(f, r.vertices);
    o.evals += static_cast<std::int64_t>(r.vertices.cols()) + 1;
    adapt_rec(f, r.vertices, r.measure, m0, tol_total * share, 0, max_rounds, budget,
              o);
  });
  EngineStats s;
  double integral = 0.0, err = 0.0;
  for (const RootOut& o : outs) {
    integral += o.integral;
    err += o.err;
    s.evals += o.evals;
    s.budget_hit = s.budget_hit || o.budget_hit;
  }
  s.mean = integral / mu_total;
  s.bound = err / mu_total;
  return s;
}

// ---- Stratified Monte Carlo over simplices -------------------------------

Vec sample_in_simplex(const Mat& V, Rng& rng) {
  const int k = static_cast<int>(V.cols());
  Vec bary(k);
  double tot = 0.0;
  for (int i = 0; i < k; ++i) {
    double u = std::max(rng.uniform01(), 1e-300);
    bary[i] = -std::log(u);
    tot += bary[i];
  }
  return V * (bary / tot);
}

struct McStratum {
  Rng rng{0};
  std::int64_t count = 0;
  double sum = 0.0;
  double sumsq = 0.0;
};

EngineStats stratified_mc_mean(const std::vector<Root>& roots, const RawFn& f,
                               double mc_target, std::uint64_t seed,
                               std::int64_t max_evals) {
  double mu_total = 0.0;
  for (const Root& r : roots) mu_total += r.measure;
  std::vector<McStratum> strata(roots.size());
  for (size_t i = 0; i < strata.size(); ++i)
    strata[i].rng = Rng(derive_seed(seed, 0x1000 + i));

  std::int64_t evals = 0;
  std::int64_t round_total = std::max<std::int64_t>(20000, 64 * (std::int64_t)roots.size());
  double mean = 0.0, stderr3 = 0.0;
  while (true) {
    parallel_indexed(static_cast<std::int64_t>(roots.size()), [&](std::int64_t i) {
      McStratum& st = strata[i];
      double share = roots[i].measure / mu_total;
      auto want = std::max<std::int64_t>(
          2, static_cast<std::int64_t>(std::ceil(round_total * share)));
      for (std::int64_t s = 0; s < want; ++s) {
        double v = f(sample_in_simplex(roots[i].vertices, st.rng));
        st.count += 1;
        st.sum += v;
        st.sumsq += v * v;
      }
    });
    evals = 0;
    mean = 0.0;
    double var = 0.0;
    for (size_t i = 0; i < strata.size(); ++i) {
      const McStratum& st = strata[i];
      evals += st.count;
      double w = roots[i].measure / mu_total;
      double m = st.sum / st.count;
      mean += w * m;
      double sv = std::max(0.0, st.sumsq / st.count - m * m) *
                  (st.count / std::max<double>(1.0, st.count - 1));
      var += w * w * sv / st.count;
    }
    stderr3 = 3.0 * std::sqrt(var);
    if (stderr3 <= mc_target) return {mean, stderr3, evals, false};
    if (evals >= max_evals) return {mean, stderr3, evals, true};
    double factor = std::min(8.0, 1.3 * (stderr3 / mc_target) * (stderr3 / mc_target));
    round_total = std::min<std::int64_t>(
        max_evals - evals,
        std::max<std::int64_t>(round_total,
                               static_cast<std::int64_t>(evals * (factor - 1.0)) + 1));
  }
}

// ---- Antithetic Monte Carlo over centrally symmetric domains ---------------

// `sample` draws one point of a centrally symmetric domain; its reflection
// through `center` stays in the domain, so each draw contributes the
// antithetic pair average (f(x) + f(2c - x))/2. Fixed chunk substreams summed
// in chunk order make the estimate bitwise reproducible for a given seed.
EngineStats antithetic_mc(const std::function<Vec(Rng&)>& sample, const Vec& center,
                          const RawFn& f, double mc_target, std::uint64_t seed,
                          std::uint32_t seed_tag, std::int64_t max_evals) {
  constexpr int kChunks = 64;
  std::vector<McStratum> chunks(kChunks);
  for (int c = 0; c < kChunks; ++c)
    chunks[c].rng = Rng(derive_seed(seed, seed_tag + c));

  std::int64_t pair_quota = 512;  // per chunk, first round
  std::int64_t pairs_total = 0;
  double mean = 0.0, stderr3 = 0.0;
  while (true) {
    parallel_indexed(kChunks, [&](std::int64_t c) {
      McStratum& st = chunks[c];
      for (std::int64_t s = 0; s < pair_quota; ++s) {
        Vec x = sample(st.rng);
        double v = 0.5 * (f(x) + f(2.0 * center - x));
        st.count += 1;
        st.sum += v;
        st.sumsq += v * v;
      }
    });
    pairs_total = 0;
    double sum = 0.0, sumsq = 0.0;
    for (const McStratum& st : chunks) {
      pairs_total += st.count;
      sum += st.sum;
      sumsq += st.sumsq;
    }
    mean = sum / pairs_total;
    double var = std::max(0.0, sumsq / pairs_total - mean * mean) *
                 (pairs_total / std::max<double>(1.0, pairs_total - 1));
    stderr3 = 3.0 * std::sqrt(var / pairs_total);
    std::int64_t evals = 2 * pairs_total;
    if (stderr3 <= mc_target) return {mean, stderr3, evals, false};
    if (evals >= max_evals) return {mean, stderr3, evals, true};
    double factor = std::min(16.0, 1.3 * (stderr3 / mc_target) * (stderr3 / mc_target));
    std::int64_t want_pairs = static_cast<std::int64_t>(pairs_total * (factor - 1.0)) + 1;
    want_pairs = std::min(want_pairs, (max_evals - evals) / 2 + 1);
    pair_quota = std::max<std::int64_t>(1, want_pairs / kChunks + 1);
  }
}

// Uniform samples on/in the ball via normalized Gaussian directions.
EngineStats ball_mc(const Ball& ball, const RawFn& f, bool boundary, double mc_target,
                    std::uint64_t seed, std::int64_t max_evals) {
  const int n = ball.dim();
  const double inv_n = 1.0 / n;
  auto sample = [&ball, boundary, n, inv_n](Rng& rng) {
    Vec g = rng.gaussian_vec(n);
    double gn = g.norm();
    if (gn < 1e-300) {
      g = Vec::Unit(n, 0);
      gn = 1.0;
    }
    double r = ball.radius;
    if (!boundary) r *= std::pow(std::max(rng.uniform01(), 1e-300), inv_n);
    return Vec(ball.center + (r / gn) * g);
  };
  return antithetic_mc(sample, ball.center, f, mc_target, seed, 0x2000, max_evals);
}

// Uniform samples on/in a parallelotope: the body maps the unit cube through
// the edge matrix; the boundary picks a facet pair by its measure and samples
// the corresponding sub-parallelotope (the antithetic reflection covers the
// opposite facet of the pair).
EngineStats parallelotope_mc(const Parallelotope& p, const RawFn& f, bool boundary,
                             double mc_target, std::uint64_t seed,
                             std::int64_t max_evals) {
  const int n = p.dim();
  std::vector<double> cdf(boundary ? n : 0);
  if (boundary) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += p.facet_pair_measure(i);
      cdf[i] = acc;
    }
  }
  auto sample = [&p, &cdf, boundary, n](Rng& rng) {
    int skip = -1;
    if (boundary) {
      double r = rng.uniform01() * cdf.back();
      skip = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), r) - cdf.begin());
      skip = std::min(skip, n - 1);
    }
    Vec x = p.origin;
    for (int j = 0; j < n; ++j)
      if (j != skip) x += rng.uniform01() * p.edges.col(j);
    return x;
  };
  return antithetic_mc(sample, p.center(), f, mc_target, seed, 0x3000, max_evals);
}

// ---- Exact max-affine integration over polytopes --------------------------

// Mean of a MaxAffine over a polytope body by decomposing it into the regions
// where each piece attains the max; on each region the function is affine, so
// region volume and centroid give the integral in closed form. Returns
// nothing when the region volumes fail to add back up to the body volume.
std::optional<double> maxaffine_polytope_mean(const Polytope& P, const MaxAffine& ma) {
  const int d = P.dim();
  const double vol = P.volume();
  double acc = 0.0, volsum = 0.0;
  for (size_t j = 0; j < ma.pieces.size(); ++j) {
    std::vector<HalfSpace> hs;
    for (const Facet& fc : P.facets()) hs.push_back(fc.plane);
    bool empty = false;
    for (size_t l = 0; l < ma.pieces.size(); ++l) {
      if (l == j) continue;
      Vec dvec = ma.pieces[l].a - ma.pieces[j].a;
      double nd = dvec.norm();
      if (nd < 1e-12) {
        if (ma.pieces[l].b > ma.pieces[j].b) empty = true;  // piece j never wins
        continue;
      }
      hs.emplace_back(dvec / nd, (ma.pieces[j].b - ma.pieces[l].b) / nd);
    }
    if (empty) continue;
    try {
      Polytope R = detail::build_from_halfspaces(hs, d);
      acc += R.volume() * (ma.pieces[j].a.dot(R.body_centroid()) + ma.pieces[j].b);
      volsum += R.volume();
    } catch (const EmptyRegion&) {
    } catch (const DegenerateInput&) {
    } catch (const UnboundedRegion&) {
      return std::nullopt;
    } catch (const NumericalFailure&) {
      return std::nullopt;
    }
  }
  if (std::abs(volsum - vol) > 1e-7 * vol + 1e-14) return std::nullopt;
  return acc / vol;
}

MaxAffine pushforward_maxaffine(const MaxAffine& ma, const Vec& origin, const Mat& basis) {
  std::vector<Affine> pieces;
  pieces.reserve(ma.pieces.size());
  for (const Affine& p : ma.pieces)
    pieces.push_back({basis.transpose() * p.a, p.a.dot(origin) + p.b});
  return MaxAffine(std::move(pieces));
}

std::optional<double> maxaffine_boundary_mean(const Polytope& P, const MaxAffine& ma) {
  double total = 0.0, area = 0.0;
  for (size_t fid = 0; fid < P.facets().size(); ++fid) {
    EmbeddedPolytope E = facet_flat(P, static_cast<int>(fid));
    MaxAffine flat_ma = pushforward_maxaffine(ma, E.origin, E.basis);
    auto m = maxaffine_polytope_mean(E.flat, flat_ma);
    if (!m) return std::nullopt;
    total += *m * E.flat.volume();
    area += E.flat.volume();
  }
  return total / area;
}

// ---- Shared dispatch helpers ----------------------------------------------

std::vector<Root> body_roots(const Polytope& P) {
  std::vector<Root> roots;
  roots.reserve(P.body_triangulation().size());
  for (const Simplex& s : P.body_triangulation())
    roots.push_back({s.vertices, s.measure()});
  return roots;
}

std::vector<Root> boundary_roots(const Polytope& P) {
  std::vector<Root> roots;
  roots.reserve(P.boundary_triangulation().size());
  for (const auto& [fid, s] : P.boundary_triangulation())
    roots.push_back({s.vertices, s.measure()});
  return roots;
}

Estimate quadform_rule_pass(const std::vector<Root>& roots, const RawFn& f) {
  // The per-simplex rule is exact through degree 3, so one pass over the
  // triangulation integrates any quadratic exactly.
  double integral = 0.0, mu = 0.0;
  std::int64_t evals = 0;
  for (const Root& r : roots) {
    integral += rule_mean(f, r.vertices) * r.measure;
    mu += r.measure;
    evals += r.vertices.cols() + 1;
  }
  return {integral / mu, 0.0, Method::exact, evals};
}

// Adaptive engine first; stratified Monte Carlo when the subdivision budget
// runs out; BudgetExceeded only when both miss their targets.
Estimate engine_then_mc(const std::vector<Root>& roots, const RawFn& f,
                        const QuadratureRequest& req) {
  EngineStats a = adaptive_mean(roots, f, req.target_error, req.max_subdivisions,
                                req.max_evaluations);
  if (!a.budget_hit || a.bound <= req.target_error)
    return {a.mean, std::max(a.bound, quad_floor(a.mean)), Method::quadrature, a.evals};
  EngineStats m = stratified_mc_mean(roots, f, req.mc_target_error, req.seed,
                                     req.max_evaluations);
  if (m.budget_hit)
    throw BudgetExceeded("quadrature budget exhausted: deterministic bound " +
                         std::to_string(a.bound) + " and monte-carlo bound " +
                         std::to_string(m.bound) + " both exceed their targets");
  return {m.mean, std::max(m.bound, quad_floor(m.mean)), Method::monte_carlo,
          a.evals + m.evals};
}

RawFn raw_of(const ConvexFn& f) {
  return [&f](const Vec& x) { return evaluate(f, x); };
}

// ---- Ball deterministic paths ---------------------------------------------
// Balls in dimension 2 and 3 separate into a radial and a directional factor.
// The radial integral along each ray is reduced first -- exactly for
// piecewise-affine and exponential integrands, by composite Gauss-Legendre
// otherwise -- and the directional mean then goes through nested angular
// grids with node doubling until two consecutive levels agree. The latitude
// chart uses psi in [-pi/2, pi/2] with area density cos(psi), which keeps
// the integrand smooth at the poles.

struct RadialMiss {};  // a per-direction radial reduction missed its tolerance

struct AngularOut {
  double mean = 0.0;
  double bound = 0.0;
  bool converged = false;
};

// Exact mean of max_j(alpha_j r + beta_j) over [0, R] against weight r^m:
// builds the upper envelope of the lines (slope-ordered stack) and integrates
// each linear piece in closed form.
double envelope_radial_mean(std::vector<double> al, std::vector<double> be,
                            double R, int m) {
  const std::size_t J = al.size();
  std::vector<int> ord(J);
  std::iota(ord.begin(), ord.end(), 0);
  std::sort(ord.begin(), ord.end(), [&](int i, int j) {
    return al[i] < al[j] || (al[i] == al[j] && be[i] < be[j]);
  });
  std::vector<double> ea, eb, start;  // envelope pieces; start[i] increasing
  for (std::size_t q = 0; q < J; ++q) {
    double a = al[ord[q]], b = be[ord[q]];
    if (q + 1 < J && al[ord[q + 1]] == a) continue;  // parallel, dominated
    double s = 0.0;
    while (!ea.empty()) {
      s = (eb.back() - b) / (a - ea.back());
      if (s <= start.back()) {
        ea.pop_back();
        eb.pop_back();
        start.pop_back();
      } else {
        break;
      }
    }
    if (ea.empty()) s = 0.0;
    ea.push_back(a);
    eb.push_back(b);
    start.push_back(std::max(0.0, s));
  }
  double integral = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    double lo = std::min(start[i], R);
    double hi = (i + 1 < ea.size()) ? std::min(start[i + 1], R) : R;
    if (hi <= lo) continue;
    integral += ea[i] * (std::pow(hi, m + 2) - std::pow(lo, m + 2)) / (m + 2) +
                eb[i] * (std::pow(hi, m + 1) - std::pow(lo, m + 1)) / (m + 1);
  }
  return integral * (m + 1.0) / std::pow(R, m + 1);
}

// Exact mean of e^{gamma r} over [0, R] against weight r^m for m in {1, 2},
// written in y = gamma R; a short series avoids cancellation for small y.
double exp_radial_mean(double y, int m) {
  if (std::abs(y) < 1e-2) {
    double c1 = (m + 1.0) / (m + 2);
    double c2 = (m + 1.0) / (2.0 * (m + 3));
    double c3 = (m + 1.0) / (6.0 * (m + 4));
    double c4 = (m + 1.0) / (24.0 * (m + 5));
    return 1.0 + y * (c1 + y * (c2 + y * (c3 + y * c4)));
  }
  double e = std::exp(y);
  if (m == 1) return (e * (y - 1.0) + 1.0) * 2.0 / (y * y);
  return (e * (y * (y - 2.0) + 2.0) - 2.0) * 3.0 / (y * y * y);
}

// Adaptive composite Gauss-Legendre mean of f(c + r u) over [0, R] against
// weight r^m, for radially smooth integrands without a closed form.
double radial_gl_mean(const ConvexFn& f, const Vec& c, const Vec& u, double R,
                      int m, double tol, int max_halvings,
                      std::atomic<std::int64_t>& evals) {
  static const auto gl16 = [] {
    std::vector<double> n, w;
    detail::gauss_legendre(16, n, w);
    return std::make_pair(n, w);
  }();
  const double norm = std::pow(R, m + 1) / (m + 1);
  double prev = 0.0;
  for (int level = 0; level <= max_halvings; ++level) {
    const std::int64_t panels = std::int64_t(1) << level;
    double acc = 0.0;
    for (std::int64_t p = 0; p < panels; ++p) {
      double r0 = R * double(p) / panels, r1 = R * double(p + 1) / panels;
      double mid = 0.5 * (r0 + r1), half = 0.5 * (r1 - r0);
      for (std::size_t k = 0; k < gl16.first.size(); ++k) {
        double r = mid + half * gl16.first[k];
        acc += gl16.second[k] * half * std::pow(r, m) * evaluate(f, c + r * u);
      }
    }
    evals.fetch_add(16 * panels, std::memory_order_relaxed);
    if (level > 0 && 3.0 * std::abs(acc - prev) <= tol * norm) return acc / norm;
    prev = acc;
  }
  throw RadialMiss{};
}

// Mean of g over [0, 2pi) by the nested trapezoid rule with node doubling
// (spectral on smooth periodic integrands, second order across kinks).
AngularOut circle_engine(const std::function<double(double)>& g, double target,
                         const QuadratureRequest& req, std::int64_t& evals) {
  const double twopi = 2.0 * M_PI;
  int K = 32;
  std::vector<double> vals(K);
  parallel_indexed(K, [&](std::int64_t j) { vals[j] = g(twopi * double(j) / K); });
  double sum = 0.0;
  for (double v : vals) sum += v;
  evals += K;
  AngularOut out;
  out.mean = sum / K;
  double prev = out.mean;
  for (int round = 0; round < req.max_subdivisions; ++round) {
    vals.assign(K, 0.0);
    parallel_indexed(K, [&](std::int64_t j) {
      vals[j] = g(twopi * (double(j) + 0.5) / K);
    });
    for (double v : vals) sum += v;
    evals += K;
    K *= 2;
    double cur = sum / K;
    out.mean = cur;
    out.bound = 3.0 * std::abs(cur - prev);
    if (out.bound <= target) {
      out.converged = true;
      break;
    }
    if (evals + K > req.max_evaluations) break;
    prev = cur;
  }
  return out;
}

// Mean of g(psi, phi) against the sphere area density cos(psi) by a product
// grid: composite Gauss-Legendre in latitude, trapezoid in longitude, both
// doubled each round until two consecutive grids agree.
AngularOut sphere_engine(const std::function<double(double, double)>& g,
                         double target, const QuadratureRequest& req,
                         std::int64_t& evals) {
  std::vector<double> nodes, weights;
  detail::gauss_legendre(8, nodes, weights);
  int P = 2, K = 32;
  AngularOut out;
  double prev = 0.0;
  for (int round = 0; round < req.max_subdivisions; ++round) {
    const int rows = 8 * P;
    std::vector<double> psi(rows), wcos(rows), rowmean(rows);
    for (int p = 0; p < P; ++p) {
      double lo = -0.5 * M_PI + M_PI * double(p) / P;
      double mid = lo + 0.5 * M_PI / P, half = 0.5 * M_PI / P;
      for (int k = 0; k < 8; ++k) {
        int i = 8 * p + k;
        psi[i] = mid + half * nodes[k];
        wcos[i] = weights[k] * half * std::cos(psi[i]);
      }
    }
    parallel_indexed(rows, [&](std::int64_t i) {
      double s = 0.0;
      for (int j = 0; j < K; ++j) s += g(psi[i], 2.0 * M_PI * double(j) / K);
      rowmean[i] = s / K;
    });
    evals += std::int64_t(rows) * K;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < rows; ++i) {
      num += wcos[i] * rowmean[i];
      den += wcos[i];
    }
    double cur = num / den;
    if (round > 0) {
      out.bound = 3.0 * std::abs(cur - prev);
      if (out.bound <= target) {
        out.mean = cur;
        out.converged = true;
        break;
      }
    }
    out.mean = cur;
    prev = cur;
    if (evals + 4 * std::int64_t(rows) * K > req.max_evaluations) break;
    P *= 2;
    K *= 2;
  }
  return out;
}

Estimate ball_tensor_mean(const Ball& ball, const ConvexFn& f, bool boundary,
                          const QuadratureRequest& req) {
  const int n = ball.dim();
  const Vec c = ball.center;
  const double R = ball.radius;
  std::atomic<std::int64_t> radial_evals{0};

  double radial_bound = 0.0;
  double ang_target = req.target_error;
  std::function<double(const Vec&)> dir_mean;
  if (boundary) {
    dir_mean = [&f, c, R](const Vec& u) { return evaluate(f, c + R * u); };
  } else if (const auto* ma = std::get_if<MaxAffine>(&f)) {
    dir_mean = [ma, c, R, n](const Vec& u) {
      const std::size_t J = ma->pieces.size();
      std::vector<double> al(J), be(J);
      for (std::size_t j = 0; j < J; ++j) {
        al[j] = ma->pieces[j].a.dot(u);
        be[j] = ma->pieces[j].a.dot(c) + ma->pieces[j].b;
      }
      return envelope_radial_mean(std::move(al), std::move(be), R, n - 1);
    };
  } else if (const auto* ex = std::get_if<ExpAffine>(&f)) {
    dir_mean = [ex, c, R, n](const Vec& u) {
      return std::exp(ex->a.dot(c) + ex->b) * exp_radial_mean(ex->a.dot(u) * R, n - 1);
    };
  } else if (const auto* pn = std::get_if<PNorm>(&f);
             pn && (pn->center - c).norm() <= 1e-12 * (1.0 + R)) {
    // f(c + r u) = r |u|_p when the norm is centered at the ball center
    dir_mean = [&f, c, R, n](const Vec& u) {
      return evaluate(f, c + u) * R * double(n) / (n + 1);
    };
  } else {
    radial_bound = 0.25 * req.target_error;
    ang_target = 0.5 * req.target_error;
    dir_mean = [&f, &c, R, n, radial_bound, &req, &radial_evals](const Vec& u) {
      return radial_gl_mean(f, c, u, R, n - 1, radial_bound, req.max_subdivisions,
                            radial_evals);
    };
  }

  AngularOut ang;
  std::int64_t ang_evals = 0;
  try {
    if (n == 2) {
      ang = circle_engine(
          [&](double phi) {
            Vec u(2);
            u << std::cos(phi), std::sin(phi);
            return dir_mean(u);
          },
          ang_target, req, ang_evals);
    } else {
      ang = sphere_engine(
          [&](double psi, double phi) {
            double cp = std::cos(psi);
            Vec u(3);
            u << cp * std::cos(phi), cp * std::sin(phi), std::sin(psi);
            return dir_mean(u);
          },
          ang_target, req, ang_evals);
    }
  } catch (const RadialMiss&) {
    ang.converged = false;
  }
  std::int64_t evals = ang_evals + radial_evals.load();
  if (ang.converged) {
    double bound = std::max(ang.bound + radial_bound, quad_floor(ang.mean));
    return {ang.mean, bound, Method::quadrature, evals};
  }
  EngineStats m = ball_mc(ball, raw_of(f), boundary, req.mc_target_error, req.seed,
                          req.max_evaluations);
  if (m.budget_hit)
    throw BudgetExceeded("ball quadrature budget exhausted: bounds " +
                         std::to_string(ang.bound + radial_bound) + " and " +
                         std::to_string(m.bound) + " exceed their targets");
  return {m.mean, std::max(m.bound, quad_floor(m.mean)), Method::monte_carlo,
          evals + m.evals};
}

Estimate ball_mean(const Ball& ball, const ConvexFn& f, bool boundary,
                   const QuadratureRequest& req) {
  const int n = ball.dim();
  if (const auto* qf = std::get_if<QuadForm>(&f)) {
    // With x = c + y and y uniform over the ball (or sphere), E[y] = 0 and
    // E[y y^T] = R^2 I / (n+2) (resp. R^2 I / n), giving a closed form.
    double fc = evaluate(f, ball.center);
    double tr = qf->factor.squaredNorm();
    double scale = boundary ? ball.radius * ball.radius / n
                            : ball.radius * ball.radius / (n + 2);
    return {fc + scale * tr, 0.0, Method::exact, 1};
  }
  if (n <= 3) return ball_tensor_mean(ball, f, boundary, req);
  EngineStats m =
      ball_mc(ball, raw_of(f), boundary, req.mc_target_error, req.seed,
              req.max_evaluations);
  if (m.budget_hit)
    throw BudgetExceeded("ball monte-carlo budget exhausted: bound " +
                         std::to_string(m.bound) + " exceeds target " +
                         std::to_string(req.mc_target_error));
  return {m.mean, std::max(m.bound, quad_floor(m.mean)), Method::monte_carlo, m.evals};
}

// Mean of a quadratic over a parallelotope body or boundary in closed form:
// with x = m + E(u - 1/2) and u uniform on [0,1]^n, E[x] = m and
// Cov[x] = E E^T / 12, so the |Gx|^2 part contributes tr(G E E^T G^T)/12;
// each boundary facet is a sub-parallelotope and gets the same treatment.
Estimate parallelotope_quadform_mean(const Parallelotope& p, const QuadForm& qf,
                                     bool boundary) {
  const int n = p.dim();
  auto fval = [&qf](const Vec& x) {
    return (qf.factor * x).squaredNorm() + qf.a.dot(x) + qf.b;
  };
  const Vec m = p.center();
  if (!boundary) {
    Mat ge = qf.factor * p.edges;
    return {fval(m) + ge.squaredNorm() / 12.0, 0.0, Method::exact, 1};
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    double mu = p.facet_pair_measure(i);
    Mat sub(n, n - 1);
    for (int j = 0, k = 0; j < n; ++j)
      if (j != i) sub.col(k++) = p.edges.col(j);
    double spread = (qf.factor * sub).squaredNorm() / 12.0;
    Vec half = 0.5 * p.edges.col(i);
    num += mu * (fval(m + half) + fval(m - half) + 2.0 * spread);
    den += 2.0 * mu;
  }
  return {num / den, 0.0, Method::exact, 2 * n + 1};
}

Estimate parallelotope_mc_estimate(const Parallelotope& p, const ConvexFn& f,
                                   bool boundary, const QuadratureRequest& req) {
  EngineStats m = parallelotope_mc(p, raw_of(f), boundary, req.mc_target_error,
                                   req.seed, req.max_evaluations);
  if (m.budget_hit)
    throw BudgetExceeded("parallelotope monte-carlo budget exhausted: bound " +
                         std::to_string(m.bound) + " exceeds target " +
                         std::to_string(req.mc_target_error));
  return {m.mean, std::max(m.bound, quad_floor(m.mean)), Method::monte_carlo, m.evals};
}

const Polytope& required_realized(const Shape& s) {
  const Polytope* p = realized_polytope(s);
  if (!p) throw UnsupportedDimension("shape has no realized hull");
  return *p;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::quadrature: return "quadrature";
    case Method::monte_carlo: return "monte-carlo";
  }
  throw Error("unknown method");
}

Estimate mean_over_segment(const ConvexFn& f, const Vec& a, const Vec& b,
                           const QuadratureRequest& req) {
  if (a.size() != b.size()) throw DimensionMismatch("segment endpoints disagree");
  if ((a - b).norm() == 0.0) throw DegenerateInput("segment endpoints coincide");
  const int n = static_cast<int>(a.size());
  if (!accepts_dim(f, n)) throw DimensionMismatch("function does not fit dimension");
  if (auto aff = to_affine(f, n))
    return {aff->a.dot(0.5 * (a + b)) + aff->b, 0.0, Method::exact, 1};

  std::vector<double> nodes, weights;
  detail::gauss_legendre(16, nodes, weights);
  std::int64_t evals = 0;
  double prev = 0.0;
  for (int level = 0; level <= req.max_subdivisions; ++level) {
    const std::int64_t panels = std::int64_t(1) << level;
    double acc = 0.0;
    for (std::int64_t p = 0; p < panels; ++p) {
      double t0 = double(p) / panels, t1 = double(p + 1) / panels;
      double mid = 0.5 * (t0 + t1), half = 0.5 * (t1 - t0);
      for (size_t k = 0; k < nodes.size(); ++k) {
        double t = mid + half * nodes[k];
        acc += weights[k] * half * evaluate(f, a + t * (b - a));
      }
    }
    evals += 16 * panels;
    if (level > 0) {
      double diff = std::abs(acc - prev);
      if (3.0 * diff <= req.target_error)
        return {acc, std::max(3.0 * diff, quad_floor(acc)), Method::quadrature, evals};
    }
    prev = acc;
  }
  throw BudgetExceeded("segment rule did not converge within " +
                       std::to_string(req.max_subdivisions) + " halvings");
}

Estimate mean_over_body(const Shape& shape, const ConvexFn& f,
                        const QuadratureRequest& req) {
  const int n = shape_dim(shape);
  if (!accepts_dim(f, n)) throw DimensionMismatch("function does not fit shape dimension");
  if (auto aff = to_affine(f, n))
    return {aff->a.dot(shape_body_centroid(shape)) + aff->b, 0.0, Method::exact, 1};
  if (const auto* ball = std::get_if<Ball>(&shape)) return ball_mean(*ball, f, false, req);
  if (const auto* par = std::get_if<Parallelotope>(&shape)) {
    if (const auto* qf = std::get_if<QuadForm>(&f))
      return parallelotope_quadform_mean(*par, *qf, false);
    if (!par->realized) return parallelotope_mc_estimate(*par, f, false, req);
  }

  const Polytope& P = required_realized(shape);
  std::vector<Root> roots = body_roots(P);
  if (std::holds_alternative<QuadForm>(f)) return quadform_rule_pass(roots, raw_of(f));
  if (const auto* ma = std::get_if<MaxAffine>(&f)) {
    if (auto v = maxaffine_polytope_mean(P, *ma))
      return {*v, 0.0, Method::exact, static_cast<std::int64_t>(ma->pieces.size())};
  }
  return engine_then_mc(roots, raw_of(f), req);
}

Estimate mean_over_boundary(const Shape& shape, const ConvexFn& f,
                            const QuadratureRequest& req) {
  const int n = shape_dim(shape);
  if (!accepts_dim(f, n)) throw DimensionMismatch("function does not fit shape dimension");
  if (auto aff = to_affine(f, n))
    return {aff->a.dot(shape_boundary_centroid(shape)) + aff->b, 0.0, Method::exact, 1};
  if (const auto* ball = std::get_if<Ball>(&shape)) return ball_mean(*ball, f, true, req);
  if (const auto* par = std::get_if<Parallelotope>(&shape)) {
    if (const auto* qf = std::get_if<QuadForm>(&f))
      return parallelotope_quadform_mean(*par, *qf, true);
    if (!par->realized) return parallelotope_mc_estimate(*par, f, true, req);
  }

  const Polytope& P = required_realized(shape);
  std::vector<Root> roots = boundary_roots(P);
  if (std::holds_alternative<QuadForm>(f)) return quadform_rule_pass(roots, raw_of(f));
  if (const auto* ma = std::get_if<MaxAffine>(&f)) {
    if (auto v = maxaffine_boundary_mean(P, *ma))
      return {*v, 0.0, Method::exact, static_cast<std::int64_t>(ma->pieces.size())};
  }
  return engine_then_mc(roots, raw_of(f), req);
}

Estimate mean_over_flat(const EmbeddedPolytope& flat, const ConvexFn& f,
                        const QuadratureRequest& req) {
  const int n = static_cast<int>(flat.origin.size());
  if (!accepts_dim(f, n)) throw DimensionMismatch("function does not fit flat dimension");
  if (auto aff = to_affine(f, n)) {
    Vec c = flat.embed(flat.flat.body_centroid());
    return {aff->a.dot(c) + aff->b, 0.0, Method::exact, 1};
  }
  std::vector<Root> roots;
  for (const Simplex& s : flat.flat.body_triangulation()) {
    Mat lifted = flat.basis * s.vertices;
    lifted.colwise() += flat.origin;
    roots.push_back({lifted, s.measure()});
  }
  if (std::holds_alternative<QuadForm>(f)) return quadform_rule_pass(roots, raw_of(f));
  if (const auto* ma = std::get_if<MaxAffine>(&f)) {
    MaxAffine flat_ma = pushforward_maxaffine(*ma, flat.origin, flat.basis);
    if (auto v = maxaffine_polytope_mean(flat.flat, flat_ma))
      return {*v, 0.0, Method::exact, static_cast<std::int64_t>(ma->pieces.size())};
  }
  return engine_then_mc(roots, raw_of(f), req);
}

namespace detail {

double simplex_rule_mean(const std::function<double(const Vec&)>& f, const Simplex& s) {
  return rule_mean(f, s.vertices);
}

void gauss_legendre(int order, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(order);
  weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace detail

}  // namespace jensen
