#pragma once

// Independent slow estimators used to cross-check the quadrature module.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "jensen/geometry.hpp"
#include "jensen/rng.hpp"
#include "oracles.hpp"

namespace jensen::testing {

// Stroud's degree-2 simplex rule: k+1 equally weighted nodes pulled toward
// the centroid by 1/sqrt(k+2). Independent of the library's degree-3 rule;
// both must agree exactly on quadratics.
inline double stroud2_mean(const std::function<double(const Vec&)>& f, const Mat& V) {
  const int k = static_cast<int>(V.cols()) - 1;
  const double s = 1.0 / std::sqrt(k + 2.0);
  Vec c = V.rowwise().mean();
  double acc = 0.0;
  for (int i = 0; i <= k; ++i) acc += f(c + s * (V.col(i) - c));
  return acc / (k + 1);
}

// Rejection-sampled mean of f over a polytope body.
inline McStat mc_body_mean(const Polytope& P, const std::function<double(const Vec&)>& f,
                           std::int64_t samples, std::uint64_t seed) {
  Vec lo, hi;
  P.bounding_box(lo, hi);
  Rng rng(seed);
  double sum = 0.0, sumsq = 0.0;
  std::int64_t hits = 0;
  Vec x(P.dim());
  while (hits < samples) {
    for (int j = 0; j < P.dim(); ++j) x[j] = lo[j] + (hi[j] - lo[j]) * rng.uniform01();
    if (!P.contains(x, 0.0)) continue;
    double v = f(x);
    ++hits;
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / samples;
  double var = std::max(0.0, sumsq / samples - mean * mean);
  return {mean, std::sqrt(var / samples)};
}

// Boundary mean via measure-weighted simplex picks and sorted-uniform
// barycentric spacings (a different simplex sampler than the library's).
inline McStat mc_boundary_mean(const Polytope& P,
                               const std::function<double(const Vec&)>& f,
                               std::int64_t samples, std::uint64_t seed) {
  const auto& tris = P.boundary_triangulation();
  std::vector<double> cdf;
  double total = 0.0;
  for (const auto& [fid, s] : tris) {
    total += s.measure();
    cdf.push_back(total);
  }
  Rng rng(seed);
  double sum = 0.0, sumsq = 0.0;
  for (std::int64_t i = 0; i < samples; ++i) {
    double pick = rng.uniform01() * total;
    size_t idx = std::lower_bound(cdf.begin(), cdf.end(), pick) - cdf.begin();
    if (idx >= tris.size()) idx = tris.size() - 1;
    const Mat& V = tris[idx].second.vertices;
    const int k = static_cast<int>(V.cols()) - 1;
    std::vector<double> cuts(k);
    for (int j = 0; j < k; ++j) cuts[j] = rng.uniform01();
    std::sort(cuts.begin(), cuts.end());
    Vec bary(k + 1);
    double prev = 0.0;
    for (int j = 0; j < k; ++j) {
      bary[j] = cuts[j] - prev;
      prev = cuts[j];
    }
    bary[k] = 1.0 - prev;
    double v = f(V * bary);
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / samples;
  double var = std::max(0.0, sumsq / samples - mean * mean);
  return {mean, std::sqrt(var / samples)};
}

}  // namespace jensen::testing
