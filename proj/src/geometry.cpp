#include "jensen/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include "jensen/lp.hpp"

namespace jensen {

HalfSpace::HalfSpace(const Vec& n, double d) {
  double len = n.norm();
  if (len < 1e-12) throw DegenerateInput("halfspace normal is numerically zero");
  normal = n / len;
  offset = d / len;
}

double Simplex::measure() const {
  int k = kdim();
  if (k == 0) return 1.0;
  Mat E(ambient(), k);
  for (int i = 0; i < k; ++i) E.col(i) = vertices.col(i + 1) - vertices.col(0);
  double g = (E.transpose() * E).determinant();
  if (g < 0.0) g = 0.0;
  static const double fact[] = {1, 1, 2, 6, 24, 120, 720};
  return std::sqrt(g) / fact[k];
}

Vec Simplex::centroid() const { return vertices.rowwise().mean(); }

std::pair<int, int> Simplex::longest_edge() const {
  int k = kdim();
  std::pair<int, int> best{0, 1};
  double bd = -1.0;
  for (int i = 0; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      double d = (vertices.col(i) - vertices.col(j)).squaredNorm();
      if (d > bd) {
        bd = d;
        best = {i, j};
      }
    }
  return best;
}

double Simplex::diameter() const {
  auto [i, j] = longest_edge();
  return (vertices.col(i) - vertices.col(j)).norm();
}

namespace {

std::vector<Vec> dedup_points(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> out;
  for (const Vec& p : pts) {
    bool dup = false;
    for (const Vec& q : out)
      if ((p - q).norm() <= tol) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(p);
  }
  return out;
}

// Unit normal + offset of the hyperplane through the indexed points, or
// nullopt if they do not span exactly n-1 affine dimensions.
std::optional<HalfSpace> plane_through(const std::vector<Vec>& pts,
                                       const std::vector<int>& idx, int n) {
  Mat M(static_cast<int>(idx.size()) - 1, n);
  for (size_t r = 1; r < idx.size(); ++r)
    M.row(static_cast<int>(r) - 1) = (pts[idx[r]] - pts[idx[0]]).transpose();
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv[0] : 0.0;
  if (sv[n - 2] <= 1e-9 * std::max(1.0, smax)) return std::nullopt;
  Vec u = svd.matrixV().col(n - 1);
  double d = 0.0;
  for (int i : idx) d += u.dot(pts[i]);
  d /= static_cast<double>(idx.size());
  HalfSpace h;
  h.normal = u;  // exactly unit: column of an orthogonal matrix
  h.offset = d;
  return h;
}

int matrix_row_rank(const Mat& M, double tol_abs) {
  if (M.rows() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(M);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv[0] : 0.0;
  double thr = std::max(tol_abs, 1e-12 * smax);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thr) ++r;
  return r;
}

int affine_rank_impl(const std::vector<Vec>& pts) {
  if (pts.size() <= 1) return 0;
  int n = static_cast<int>(pts[0].size());
  Vec mean = Vec::Zero(n);
  for (const Vec& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Mat M(static_cast<int>(pts.size()), n);
  for (size_t i = 0; i < pts.size(); ++i) M.row(static_cast<int>(i)) = (pts[i] - mean).transpose();
  Eigen::JacobiSVD<Mat> svd(M);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv[0] : 0.0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-7 * std::max(1.0, smax)) ++r;
  return r;
}

void next_combination_done(std::vector<int>& idx, int m, bool& done) {
  int k = static_cast<int>(idx.size());
  int i = k - 1;
  while (i >= 0 && idx[i] == m - k + i) --i;
  if (i < 0) {
    done = true;
    return;
  }
  ++idx[i];
  for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
}

}  // namespace

int affine_rank(const std::vector<Vec>& points) { return affine_rank_impl(points); }

Mat orthonormal_complement(const Vec& unit) {
  int n = static_cast<int>(unit.size());
  Eigen::HouseholderQR<Mat> qr(unit);
  Mat Q = qr.householderQ();
  // First column of Q is +-unit; the rest span the orthogonal complement.
  return Q.rightCols(n - 1);
}

namespace detail {

struct PolytopeData {
  static Polytope make(int dim, std::vector<Vec> verts, std::vector<Facet> facets,
                       std::vector<Simplex> body,
                       std::vector<std::pair<int, Simplex>> boundary) {
    Polytope P;
    P.dim_ = dim;
    P.vertices_ = std::move(verts);
    P.facets_ = std::move(facets);
    P.body_ = std::move(body);
    P.boundary_ = std::move(boundary);

    double scale = 1.0;
    for (const Vec& v : P.vertices_)
      scale = std::max(scale, v.lpNorm<Eigen::Infinity>());
    const double tol = kGeomTol * scale;

    for (const Facet& f : P.facets_) {
      for (const Vec& v : P.vertices_)
        if (f.plane.residual(v) > tol)
          throw NumericalFailure("polytope construction: vertex outside a facet");
      for (int vi : f.vertices)
        if (std::abs(f.plane.residual(P.vertices_[vi])) > tol)
          throw NumericalFailure("polytope construction: facet vertex off its plane");
    }

    double vol = 0.0;
    Vec bc = Vec::Zero(dim);
    for (const Simplex& s : P.body_) {
      double m = s.measure();
      vol += m;
      bc += m * s.centroid();
    }
    if (!(vol > 0.0)) throw DegenerateInput("polytope has zero volume");
    P.volume_ = vol;
    P.body_centroid_ = bc / vol;

    P.facet_measures_.assign(P.facets_.size(), 0.0);
    double surf = 0.0;
    Vec sc = Vec::Zero(dim);
    for (const auto& [fid, s] : P.boundary_) {
      double m = s.measure();
      P.facet_measures_[fid] += m;
      surf += m;
      sc += m * s.centroid();
    }
    P.surface_ = surf;
    P.boundary_centroid_ = sc / surf;
    return P;
  }
};

Polytope build_polytope(const std::vector<Vec>& points, int n) {
  std::vector<Vec> pts = dedup_points(points, kGeomTol);

  if (n == 1) {
    if (pts.size() < 2) throw DegenerateInput("interval needs two distinct endpoints");
    double lo = pts[0][0], hi = pts[0][0];
    for (const Vec& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    if (hi - lo <= kGeomTol) throw DegenerateInput("interval endpoints coincide");
    Vec vlo(1), vhi(1);
    vlo << lo;
    vhi << hi;
    Facet fhi, flo;
    fhi.plane.normal = Vec::Ones(1);
    fhi.plane.offset = hi;
    fhi.vertices = {1};
    flo.plane.normal = -Vec::Ones(1);
    flo.plane.offset = -lo;
    flo.vertices = {0};
    Simplex seg;
    seg.vertices = Mat(1, 2);
    seg.vertices << lo, hi;
    Simplex phi, plo;
    phi.vertices = vhi;
    plo.vertices = vlo;
    return PolytopeData::make(1, {vlo, vhi}, {fhi, flo}, {seg},
                              {{0, phi}, {1, plo}});
  }

  const int m = static_cast<int>(pts.size());
  if (m < n + 1 || affine_rank_impl(pts) < n) {
    std::ostringstream os;
    os << "points do not affinely span R^" << n;
    throw DegenerateInput(os.str());
  }

  // Exhaustive n-subset facet enumeration, deduplicated by on-set.
  std::map<std::vector<int>, HalfSpace> facet_map;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  bool done = false;
  while (!done) {
    auto plane = plane_through(pts, idx, n);
    if (plane) {
      double maxr = -std::numeric_limits<double>::infinity();
      double minr = std::numeric_limits<double>::infinity();
      for (const Vec& p : pts) {
        double r = plane->residual(p);
        maxr = std::max(maxr, r);
        minr = std::min(minr, r);
      }
      bool keep = false;
      if (maxr <= kGeomTol) {
        keep = true;
      } else if (minr >= -kGeomTol) {
        plane->normal = -plane->normal;
        plane->offset = -plane->offset;
        keep = true;
      }
      if (keep) {
        std::vector<int> on_set;
        for (int i = 0; i < m; ++i)
          if (std::abs(plane->residual(pts[i])) <= kGeomTol) on_set.push_back(i);
        if (!facet_map.count(on_set)) {
          std::vector<Vec> on_pts;
          for (int i : on_set) on_pts.push_back(pts[i]);
          if (affine_rank_impl(on_pts) == n - 1) facet_map.emplace(on_set, *plane);
        }
      }
    }
    next_combination_done(idx, m, done);
  }
  if (facet_map.size() < static_cast<size_t>(n + 1))
    throw DegenerateInput("facet enumeration found too few facets");

  std::vector<std::vector<int>> facet_on(facet_map.size());
  std::vector<HalfSpace> facet_plane(facet_map.size());
  {
    size_t k = 0;
    for (const auto& [on, pl] : facet_map) {
      facet_on[k] = on;
      facet_plane[k] = pl;
      ++k;
    }
  }

  // A point is a vertex iff its active facet normals span R^n.
  std::vector<std::vector<int>> active(m);
  for (size_t f = 0; f < facet_on.size(); ++f)
    for (int i : facet_on[f]) active[i].push_back(static_cast<int>(f));
  std::vector<int> old2new(m, -1);
  std::vector<Vec> verts;
  for (int i = 0; i < m; ++i) {
    if (active[i].size() < static_cast<size_t>(n)) continue;
    Mat N(static_cast<int>(active[i].size()), n);
    for (size_t r = 0; r < active[i].size(); ++r)
      N.row(static_cast<int>(r)) = facet_plane[active[i][r]].normal.transpose();
    if (matrix_row_rank(N, 1e-6) == n) {
      old2new[i] = static_cast<int>(verts.size());
      verts.push_back(pts[i]);
    }
  }
  if (verts.size() < static_cast<size_t>(n + 1))
    throw DegenerateInput("vertex classification found too few vertices");

  std::vector<Facet> facets;
  for (size_t f = 0; f < facet_on.size(); ++f) {
    Facet fa;
    fa.plane = facet_plane[f];
    for (int i : facet_on[f])
      if (old2new[i] >= 0) fa.vertices.push_back(old2new[i]);
    std::sort(fa.vertices.begin(), fa.vertices.end());
    if (fa.vertices.size() < static_cast<size_t>(n))
      throw NumericalFailure("facet retained fewer vertices than its dimension");
    facets.push_back(std::move(fa));
  }

  // Boundary triangulation: each facet is flattened to local coordinates and
  // triangulated one dimension down.
  std::vector<std::pair<int, Simplex>> boundary;
  for (size_t f = 0; f < facets.size(); ++f) {
    const Facet& fa = facets[f];
    Vec origin = Vec::Zero(n);
    for (int vi : fa.vertices) origin += verts[vi];
    origin /= static_cast<double>(fa.vertices.size());
    Mat basis = orthonormal_complement(fa.plane.normal);
    std::vector<Vec> loc;
    for (int vi : fa.vertices) loc.push_back(basis.transpose() * (verts[vi] - origin));
    Polytope sub = build_polytope(loc, n - 1);
    for (const Simplex& s : sub.body_triangulation()) {
      Mat lifted(n, s.vertices.cols());
      for (int c = 0; c < s.vertices.cols(); ++c)
        lifted.col(c) = origin + basis * s.vertices.col(c);
      Simplex ls;
      ls.vertices = std::move(lifted);
      boundary.emplace_back(static_cast<int>(f), std::move(ls));
    }
  }

  // Body: fan from the vertex average over the boundary simplices, oriented
  // to positive signed volume.
  Vec center = Vec::Zero(n);
  for (const Vec& v : verts) center += v;
  center /= static_cast<double>(verts.size());
  std::vector<Simplex> body;
  for (const auto& [fid, bs] : boundary) {
    Mat cols(n, n + 1);
    cols.col(0) = center;
    for (int c = 0; c < n; ++c) cols.col(c + 1) = bs.vertices.col(c);
    Mat E(n, n);
    for (int c = 0; c < n; ++c) E.col(c) = cols.col(c + 1) - cols.col(0);
    if (E.determinant() < 0.0) cols.col(1).swap(cols.col(2));
    Simplex s;
    s.vertices = std::move(cols);
    body.push_back(std::move(s));
  }

  return PolytopeData::make(n, std::move(verts), std::move(facets), std::move(body),
                            std::move(boundary));
}

Polytope build_from_halfspaces(const std::vector<HalfSpace>& halfspaces, int n) {
  const int m = static_cast<int>(halfspaces.size());
  if (m == 0) throw UnboundedRegion("no halfspaces given");
  Mat A(m, n);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    if (halfspaces[i].normal.size() != n)
      throw DimensionMismatch("halfspace dimension disagrees with ambient dimension");
    A.row(i) = halfspaces[i].normal.transpose();
    b[i] = halfspaces[i].offset;
  }

  // Feasibility and boundedness along every +-coordinate direction.
  for (int j = 0; j < n; ++j) {
    for (double sg : {1.0, -1.0}) {
      Vec c = Vec::Zero(n);
      c[j] = sg;
      LpResult r = lp_maximize(c, A, b);
      if (r.status == LpStatus::Infeasible)
        throw EmptyRegion("halfspace intersection is empty");
      if (r.status == LpStatus::Unbounded)
        throw UnboundedRegion("halfspace intersection is unbounded");
    }
  }

  // Candidate vertices from all n-subsets of boundary planes.
  std::vector<Vec> cands;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  bool done = false;
  while (!done) {
    Mat S(n, n);
    Vec t(n);
    for (int r = 0; r < n; ++r) {
      S.row(r) = A.row(idx[r]);
      t[r] = b[idx[r]];
    }
    Eigen::FullPivLU<Mat> lu(S);
    lu.setThreshold(1e-9);
    if (lu.isInvertible()) {
      Vec x = lu.solve(t);
      if (x.lpNorm<Eigen::Infinity>() < 1e10) {
        double worst = (A * x - b).maxCoeff();
        if (worst <= kGeomTol) cands.push_back(x);
      }
    }
    next_combination_done(idx, m, done);
  }

  cands = dedup_points(cands, kGeomTol);
  if (cands.size() < static_cast<size_t>(n + 1))
    throw DegenerateInput("halfspace intersection is not full-dimensional");
  return build_polytope(cands, n);
}

}  // namespace detail

bool Polytope::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) throw DimensionMismatch("contains: point dimension mismatch");
  for (const Facet& f : facets_)
    if (f.plane.residual(x) > tol) return false;
  return true;
}

void Polytope::bounding_box(Vec& lo, Vec& hi) const {
  lo = vertices_[0];
  hi = vertices_[0];
  for (const Vec& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
}

double Polytope::diameter() const {
  double best = 0.0;
  for (size_t i = 0; i < vertices_.size(); ++i)
    for (size_t j = i + 1; j < vertices_.size(); ++j)
      best = std::max(best, (vertices_[i] - vertices_[j]).norm());
  return best;
}

Polytope polytope_from_vertices(const std::vector<Vec>& points) {
  if (points.empty()) throw DegenerateInput("empty point set");
  int n = static_cast<int>(points[0].size());
  for (const Vec& p : points)
    if (p.size() != n) throw DimensionMismatch("points of mixed dimension");
  if (n < 2 || n > 4)
    throw UnsupportedDimension("general polytopes support dimensions 2..4");
  return detail::build_polytope(points, n);
}

Polytope polytope_from_halfspaces(const std::vector<HalfSpace>& halfspaces) {
  if (halfspaces.empty()) throw UnboundedRegion("no halfspaces given");
  int n = static_cast<int>(halfspaces[0].normal.size());
  if (n < 2 || n > 4)
    throw UnsupportedDimension("general polytopes support dimensions 2..4");
  for (const HalfSpace& h : halfspaces)
    if (std::abs(h.normal.norm() - 1.0) > kUnitTol)
      throw DegenerateInput("halfspace normals must be unit length");
  return detail::build_from_halfspaces(halfspaces, n);
}

EmbeddedPolytope flatten_points(const std::vector<Vec>& points, double tol) {
  std::vector<Vec> pts = dedup_points(points, kGeomTol);
  if (pts.empty()) throw DegenerateInput("empty point set");
  int n = static_cast<int>(pts[0].size());
  if (n < 2) throw UnsupportedDimension("flatten_points needs ambient dimension >= 2");
  Vec mean = Vec::Zero(n);
  for (const Vec& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Mat M(static_cast<int>(pts.size()), n);
  for (size_t i = 0; i < pts.size(); ++i)
    M.row(static_cast<int>(i)) = (pts[i] - mean).transpose();
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv[0] : 0.0;
  if (static_cast<int>(pts.size()) < n || sv[n - 2] <= 1e-7 * std::max(1.0, smax))
    throw DegenerateInput("points do not span an (n-1)-dimensional flat");
  Vec normal = svd.matrixV().col(n - 1);
  for (const Vec& p : pts)
    if (std::abs(normal.dot(p - mean)) > tol)
      throw DegenerateInput("points are not coplanar within tolerance");

  EmbeddedPolytope out;
  out.origin = mean;
  out.basis = svd.matrixV().leftCols(n - 1);
  std::vector<Vec> loc;
  for (const Vec& p : pts) loc.push_back(out.local(p));
  out.flat = detail::build_polytope(loc, n - 1);
  return out;
}

EmbeddedPolytope facet_flat(const Polytope& P, int facet_id) {
  const Facet& fa = P.facets().at(facet_id);
  int n = P.dim();
  Vec origin = Vec::Zero(n);
  for (int vi : fa.vertices) origin += P.vertices()[vi];
  origin /= static_cast<double>(fa.vertices.size());
  EmbeddedPolytope out;
  out.origin = origin;
  out.basis = orthonormal_complement(fa.plane.normal);
  std::vector<Vec> loc;
  for (int vi : fa.vertices) loc.push_back(out.local(P.vertices()[vi]));
  out.flat = detail::build_polytope(loc, n - 1);
  return out;
}

}  // namespace jensen
