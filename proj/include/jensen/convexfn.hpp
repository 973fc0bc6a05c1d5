#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jensen/errors.hpp"
#include "jensen/geometry.hpp"
#include "jensen/rng.hpp"

namespace jensen {

class Rng;

// f(x) = a.x + b
struct Affine {
  Vec a;
  double b = 0.0;
};

// f(x) = max_j (a_j.x + b_j); at least one piece, all pieces same dimension.
struct MaxAffine {
  std::vector<Affine> pieces;

  MaxAffine() = default;
  explicit MaxAffine(std::vector<Affine> ps);
};

// f(x) = |Gx|^2 + a.x + b. Convexity is structural: the quadratic part is a
// squared norm, so the Hessian 2*G^T*G is always positive semidefinite.
struct QuadForm {
  Mat factor;
  Vec a;
  double b = 0.0;

  QuadForm() = default;
  QuadForm(Mat G, Vec a_, double b_);
};

// f(x) = |x - center|_p with p >= 1.
struct PNorm {
  double p = 2.0;
  Vec center;

  PNorm() = default;
  PNorm(double p_, Vec center_);
};

// f(x) = exp(a.x + b). Coefficients are clamped into [-2, 2] componentwise so
// values stay bounded on unit-scale shapes.
struct ExpAffine {
  Vec a;
  double b = 0.0;

  ExpAffine() = default;
  ExpAffine(Vec a_, double b_);
};

// f(x) = sign * x_i with a 1-based index; valid in any dimension >= index.
struct CoordProj {
  int index = 1;
  int sign = 1;

  CoordProj() = default;
  CoordProj(int index_, int sign_);
};

using ConvexFn = std::variant<Affine, MaxAffine, QuadForm, PNorm, ExpAffine, CoordProj>;

double evaluate(const ConvexFn& f, const Vec& x);

// Natural input dimension; 0 for CoordProj, which accepts any dim >= index.
int function_dim(const ConvexFn& f);

// Whether f can be evaluated on points of dimension n.
bool accepts_dim(const ConvexFn& f, int n);

std::string describe(const ConvexFn& f);

// Affine normal form when one exists (Affine itself, CoordProj, or a
// single-piece MaxAffine), materialized in ambient dimension n.
std::optional<Affine> to_affine(const ConvexFn& f, int n);

struct ProbeResult {
  bool pass = true;
  Vec x, y;            // witness pair when pass == false
  double t = 0.0;      // witness mixing weight
  double excess = 0.0; // amount by which the convexity inequality failed
};

// Randomized midpoint test: draws (x, y, t) in the box and checks both
// f(tx+(1-t)y) <= t f(x) + (1-t) f(y) + 1e-10 and the weaker pairwise form
// f(tx+(1-t)y) + f((1-t)x+ty) <= f(x) + f(y) + 1e-10. Returns the first
// violating triple, if any.
ProbeResult convexity_probe(const ConvexFn& f, const Vec& lo, const Vec& hi,
                            int samples, std::uint64_t seed);

// Same probe over an arbitrary callable; lets tests feed in non-convex
// functions to confirm the probe actually detects violations.
ProbeResult convexity_probe_raw(const std::function<double(const Vec&)>& f,
                                const Vec& lo, const Vec& hi, int samples,
                                std::uint64_t seed);

// The default function battery for inequality checks in dimension n,
// centered at c (normally the body centroid of the shape under test):
// 2n coordinate projections, the 1/2/inf norms about c (as MaxAffine where
// the piece count stays small), |x|^2, 2n exponentials exp(+-x_i/2), and
// 20 seeded random 4-piece MaxAffine functions. Size 4n + 24.
std::vector<ConvexFn> standard_suite(int n, const Vec& c, std::uint64_t seed);

// Random MaxAffine with the given piece count; coefficients uniform in [-1,1].
MaxAffine random_maxaffine(int dim, int pieces, Rng& rng);

}  // namespace jensen
