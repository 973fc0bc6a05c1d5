#pragma once

// Dumb, slow, independent estimators used as ground truth in tests.

#include <cmath>
#include <cstdint>
#include <utility>

#include "jensen/geometry.hpp"
#include "jensen/rng.hpp"

namespace jensen::testing {

struct McStat {
  double estimate;
  double stderr_;
};

// Hit-or-miss volume over the bounding box.
inline McStat mc_volume(const Polytope& P, std::int64_t samples, std::uint64_t seed) {
  Vec lo, hi;
  P.bounding_box(lo, hi);
  double boxvol = 1.0;
  for (int j = 0; j < P.dim(); ++j) boxvol *= hi[j] - lo[j];
  Rng rng(seed);
  std::int64_t hits = 0;
  Vec x(P.dim());
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < P.dim(); ++j) x[j] = lo[j] + (hi[j] - lo[j]) * rng.uniform01();
    if (P.contains(x, 0.0)) ++hits;
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  return {boxvol * p,
          boxvol * std::sqrt(std::max(p * (1.0 - p), 1e-12) / static_cast<double>(samples))};
}

// Rejection-sampled body centroid; returns (estimate, largest per-coordinate stderr).
inline std::pair<Vec, double> mc_centroid(const Polytope& P, std::int64_t samples,
                                          std::uint64_t seed) {
  Vec lo, hi;
  P.bounding_box(lo, hi);
  Rng rng(seed);
  Vec sum = Vec::Zero(P.dim());
  Vec sumsq = Vec::Zero(P.dim());
  std::int64_t hits = 0;
  Vec x(P.dim());
  while (hits < samples) {
    for (int j = 0; j < P.dim(); ++j) x[j] = lo[j] + (hi[j] - lo[j]) * rng.uniform01();
    if (P.contains(x, 0.0)) {
      ++hits;
      sum += x;
      sumsq += x.cwiseProduct(x);
    }
  }
  Vec mean = sum / static_cast<double>(samples);
  double worst = 0.0;
  for (int j = 0; j < P.dim(); ++j) {
    double var = sumsq[j] / samples - mean[j] * mean[j];
    worst = std::max(worst, std::sqrt(std::max(var, 0.0) / samples));
  }
  return {mean, worst};
}

}  // namespace jensen::testing
