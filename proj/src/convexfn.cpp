#include "jensen/convexfn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace jensen {

MaxAffine::MaxAffine(std::vector<Affine> ps) : pieces(std::move(ps)) {
  if (pieces.empty()) throw DegenerateInput("MaxAffine needs at least one piece");
  for (const Affine& p : pieces)
    if (p.a.size() != pieces.front().a.size())
      throw DimensionMismatch("MaxAffine pieces disagree on dimension");
}

QuadForm::QuadForm(Mat G, Vec a_, double b_)
    : factor(std::move(G)), a(std::move(a_)), b(b_) {
  if (factor.cols() != a.size())
    throw DimensionMismatch("QuadForm factor and linear term disagree on dimension");
}

PNorm::PNorm(double p_, Vec center_) : p(p_), center(std::move(center_)) {
  if (!(p >= 1.0)) throw DegenerateInput("PNorm needs p >= 1");
}

ExpAffine::ExpAffine(Vec a_, double b_) : a(std::move(a_)), b(b_) {
  for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = std::clamp(a[i], -2.0, 2.0);
}

CoordProj::CoordProj(int index_, int sign_) : index(index_), sign(sign_) {
  if (index < 1) throw DegenerateInput("CoordProj index is 1-based");
  if (sign != 1 && sign != -1) throw DegenerateInput("CoordProj sign must be +-1");
}

namespace {

void need_dim(Eigen::Index want, Eigen::Index got) {
  if (want != got) throw DimensionMismatch("function expects dimension " +
                                           std::to_string(want) + ", point has " +
                                           std::to_string(got));
}

}  // namespace

double evaluate(const ConvexFn& f, const Vec& x) {
  struct Visitor {
    const Vec& x;
    double operator()(const Affine& f) const {
      need_dim(f.a.size(), x.size());
      return f.a.dot(x) + f.b;
    }
    double operator()(const MaxAffine& f) const {
      need_dim(f.pieces.front().a.size(), x.size());
      double best = -std::numeric_limits<double>::infinity();
      for (const Affine& p : f.pieces) best = std::max(best, p.a.dot(x) + p.b);
      return best;
    }
    double operator()(const QuadForm& f) const {
      need_dim(f.factor.cols(), x.size());
      return (f.factor * x).squaredNorm() + f.a.dot(x) + f.b;
    }
    double operator()(const PNorm& f) const {
      need_dim(f.center.size(), x.size());
      Vec d = (x - f.center).cwiseAbs();
      double m = d.maxCoeff();
      if (m == 0.0) return 0.0;
      // Scale out the largest term so large p does not overflow.
      double s = 0.0;
      for (Eigen::Index i = 0; i < d.size(); ++i) s += std::pow(d[i] / m, f.p);
      return m * std::pow(s, 1.0 / f.p);
    }
    double operator()(const ExpAffine& f) const {
      need_dim(f.a.size(), x.size());
      return std::exp(f.a.dot(x) + f.b);
    }
    double operator()(const CoordProj& f) const {
      if (x.size() < f.index)
        throw DimensionMismatch("CoordProj index " + std::to_string(f.index) +
                                " exceeds point dimension " + std::to_string(x.size()));
      return f.sign * x[f.index - 1];
    }
  };
  return std::visit(Visitor{x}, f);
}

int function_dim(const ConvexFn& f) {
  struct Visitor {
    int operator()(const Affine& f) const { return static_cast<int>(f.a.size()); }
    int operator()(const MaxAffine& f) const {
      return static_cast<int>(f.pieces.front().a.size());
    }
    int operator()(const QuadForm& f) const { return static_cast<int>(f.factor.cols()); }
    int operator()(const PNorm& f) const { return static_cast<int>(f.center.size()); }
    int operator()(const ExpAffine& f) const { return static_cast<int>(f.a.size()); }
    int operator()(const CoordProj&) const { return 0; }
  };
  return std::visit(Visitor{}, f);
}

bool accepts_dim(const ConvexFn& f, int n) {
  if (const auto* cp = std::get_if<CoordProj>(&f)) return cp->index <= n;
  return function_dim(f) == n;
}

std::string describe(const ConvexFn& f) {
  struct Visitor {
    std::string operator()(const Affine&) const { return "affine"; }
    std::string operator()(const MaxAffine& f) const {
      return "maxaffine[" + std::to_string(f.pieces.size()) + "]";
    }
    std::string operator()(const QuadForm&) const { return "quadform"; }
    std::string operator()(const PNorm& f) const {
      std::ostringstream os;
      os << "pnorm(p=" << f.p << ")";
      return os.str();
    }
    std::string operator()(const ExpAffine&) const { return "expaffine"; }
    std::string operator()(const CoordProj& f) const {
      return std::string("coordproj(") + (f.sign > 0 ? "+" : "-") + "x" +
             std::to_string(f.index) + ")";
    }
  };
  return std::visit(Visitor{}, f);
}

std::optional<Affine> to_affine(const ConvexFn& f, int n) {
  if (const auto* a = std::get_if<Affine>(&f)) {
    if (a->a.size() != n) throw DimensionMismatch("affine form has wrong dimension");
    return *a;
  }
  if (const auto* cp = std::get_if<CoordProj>(&f)) {
    if (cp->index > n)
      throw DimensionMismatch("CoordProj index exceeds ambient dimension");
    Affine out;
    out.a = Vec::Zero(n);
    out.a[cp->index - 1] = cp->sign;
    out.b = 0.0;
    return out;
  }
  if (const auto* ma = std::get_if<MaxAffine>(&f)) {
    if (ma->pieces.size() == 1) {
      if (ma->pieces.front().a.size() != n)
        throw DimensionMismatch("affine form has wrong dimension");
      return ma->pieces.front();
    }
  }
  return std::nullopt;
}

ProbeResult convexity_probe_raw(const std::function<double(const Vec&)>& f,
                                const Vec& lo, const Vec& hi, int samples,
                                std::uint64_t seed) {
  if (samples < 1) throw DegenerateInput("convexity probe needs samples >= 1");
  const double slack = 1e-10;
  Rng rng(seed);
  const Eigen::Index n = lo.size();
  Vec x(n), y(n);
  for (int s = 0; s < samples; ++s) {
    for (Eigen::Index j = 0; j < n; ++j) {
      x[j] = rng.uniform(lo[j], hi[j]);
      y[j] = rng.uniform(lo[j], hi[j]);
    }
    double t = rng.uniform01();
    Vec mix = t * x + (1.0 - t) * y;
    Vec mirror = (1.0 - t) * x + t * y;
    double fx = f(x), fy = f(y), fmix = f(mix);
    if (fmix > t * fx + (1.0 - t) * fy + slack)
      return {false, x, y, t, fmix - (t * fx + (1.0 - t) * fy)};
    double fmirror = f(mirror);
    if (fmix + fmirror > fx + fy + slack)
      return {false, x, y, t, fmix + fmirror - (fx + fy)};
  }
  return {};
}

ProbeResult convexity_probe(const ConvexFn& f, const Vec& lo, const Vec& hi,
                            int samples, std::uint64_t seed) {
  return convexity_probe_raw([&f](const Vec& x) { return evaluate(f, x); }, lo, hi,
                             samples, seed);
}

MaxAffine random_maxaffine(int dim, int pieces, Rng& rng) {
  std::vector<Affine> ps(pieces);
  for (Affine& p : ps) {
    p.a = Vec::NullaryExpr(dim, [&rng](Eigen::Index) { return rng.uniform(-1.0, 1.0); });
    p.b = rng.uniform(-1.0, 1.0);
  }
  return MaxAffine(std::move(ps));
}

std::vector<ConvexFn> standard_suite(int n, const Vec& c, std::uint64_t seed) {
  if (n < 1) throw UnsupportedDimension("standard suite needs dimension >= 1");
  if (c.size() != n) throw DimensionMismatch("suite center has wrong dimension");
  std::vector<ConvexFn> suite;
  suite.reserve(4 * n + 24);

  for (int i = 1; i <= n; ++i) {
    suite.emplace_back(CoordProj(i, +1));
    suite.emplace_back(CoordProj(i, -1));
  }

  suite.emplace_back(PNorm(2.0, c));

  // |x - c|_1: exact MaxAffine needs one piece per sign pattern, so keep it
  // only while 2^n stays small.
  if (n <= 4) {
    std::vector<Affine> pieces;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Affine p;
      p.a = Vec(n);
      for (int j = 0; j < n; ++j) p.a[j] = (mask & (1u << j)) ? 1.0 : -1.0;
      p.b = -p.a.dot(c);
      pieces.push_back(std::move(p));
    }
    suite.emplace_back(MaxAffine(std::move(pieces)));
  } else {
    suite.emplace_back(PNorm(1.0, c));
  }

  // |x - c|_inf is always a cheap MaxAffine.
  {
    std::vector<Affine> pieces;
    for (int i = 0; i < n; ++i) {
      for (double s : {1.0, -1.0}) {
        Affine p;
        p.a = Vec::Zero(n);
        p.a[i] = s;
        p.b = -s * c[i];
        pieces.push_back(std::move(p));
      }
    }
    suite.emplace_back(MaxAffine(std::move(pieces)));
  }

  suite.emplace_back(QuadForm(Mat::Identity(n, n), Vec::Zero(n), 0.0));

  for (int i = 0; i < n; ++i) {
    for (double s : {0.5, -0.5}) {
      Vec a = Vec::Zero(n);
      a[i] = s;
      suite.emplace_back(ExpAffine(std::move(a), 0.0));
    }
  }

  for (int k = 0; k < 20; ++k) {
    Rng rng(derive_seed(seed, 0x500 + static_cast<std::uint64_t>(k)));
    suite.emplace_back(random_maxaffine(n, 4, rng));
  }

  return suite;
}

}  // namespace jensen
