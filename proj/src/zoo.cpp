#include "jensen/zoo.hpp"

#include <cmath>
#include <sstream>

#include "jensen/insphere.hpp"
#include "jensen/rng.hpp"

namespace jensen {

namespace {

Vec vec_of(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

Parallelotope make_parallelotope(const Vec& origin, const Mat& edges) {
  const int n = static_cast<int>(origin.size());
  if (edges.rows() != n || edges.cols() != n)
    throw DimensionMismatch("make_parallelotope: edges must be n x n");
  if (std::abs(edges.determinant()) < 1e-12)
    throw DegenerateInput("make_parallelotope: edge vectors are linearly dependent");
  Parallelotope p;
  p.origin = origin;
  p.edges = edges;
  if (n >= 2 && n <= 4) {
    std::vector<Vec> corners;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      Vec c = origin;
      for (int j = 0; j < n; ++j)
        if (mask & (1u << j)) c += edges.col(j);
      corners.push_back(c);
    }
    p.realized = polytope_from_vertices(corners);
  }
  return p;
}

Ball make_ball(int n, const Vec& center, double radius) {
  if (n < 2) throw UnsupportedDimension("make_ball: dimension must be >= 2");
  if (center.size() != n) throw DimensionMismatch("make_ball: center has wrong size");
  if (!(radius > 0.0)) throw DegenerateInput("make_ball: radius must be positive");
  return Ball{center, radius};
}

Cone make_cone(const std::vector<Vec>& base_vertices, const Vec& apex) {
  EmbeddedPolytope base = flatten_points(base_vertices);
  return make_cone(base, apex);
}

Cone make_cone(const EmbeddedPolytope& base, const Vec& apex) {
  const int n = base.ambient();
  if (apex.size() != n) throw DimensionMismatch("make_cone: apex has wrong dimension");
  Vec d = apex - base.origin;
  double height = (d - base.basis * (base.basis.transpose() * d)).norm();
  if (height <= 1e-9)
    throw DegenerateInput("make_cone: apex lies on the base hyperplane");

  Cone c;
  c.base = base;
  c.apex = apex;
  c.height = height;
  for (const Vec& v : base.flat.vertices()) c.base_vertices.push_back(base.embed(v));
  std::vector<Vec> all = c.base_vertices;
  all.push_back(apex);
  c.realized = polytope_from_vertices(all);

  double predicted = height * base.flat.volume() / static_cast<double>(n);
  if (std::abs(c.realized.volume() - predicted) > 1e-9 * predicted)
    throw NumericalFailure("make_cone: volume disagrees with height*|base|/n");
  return c;
}

Polytope make_regular_polygon(int k, double circumradius) {
  if (k < 3) throw DegenerateInput("make_regular_polygon: need at least 3 sides");
  if (!(circumradius > 0.0))
    throw DegenerateInput("make_regular_polygon: radius must be positive");
  std::vector<Vec> pts;
  for (int j = 0; j < k; ++j) {
    double a = 2.0 * M_PI * j / k;
    pts.push_back(vec_of({circumradius * std::cos(a), circumradius * std::sin(a)}));
  }
  return polytope_from_vertices(pts);
}

Polytope make_platonic(PlatonicSolid which, double scale) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec> pts;
  switch (which) {
    case PlatonicSolid::Tetrahedron:
      pts = {vec_of({1, 1, 1}), vec_of({1, -1, -1}), vec_of({-1, 1, -1}),
             vec_of({-1, -1, 1})};
      break;
    case PlatonicSolid::Cube:
      for (double x : {-1.0, 1.0})
        for (double y : {-1.0, 1.0})
          for (double z : {-1.0, 1.0}) pts.push_back(vec_of({x, y, z}));
      break;
    case PlatonicSolid::Octahedron:
      for (int j = 0; j < 3; ++j)
        for (double sg : {-1.0, 1.0}) {
          Vec v = Vec::Zero(3);
          v[j] = sg;
          pts.push_back(v);
        }
      break;
    case PlatonicSolid::Icosahedron:
      for (double a : {-1.0, 1.0})
        for (double b : {-phi, phi}) {
          pts.push_back(vec_of({0, a, b}));
          pts.push_back(vec_of({a, b, 0}));
          pts.push_back(vec_of({b, 0, a}));
        }
      break;
    case PlatonicSolid::Dodecahedron:
      for (double x : {-1.0, 1.0})
        for (double y : {-1.0, 1.0})
          for (double z : {-1.0, 1.0}) pts.push_back(vec_of({x, y, z}));
      for (double a : {-1.0 / phi, 1.0 / phi})
        for (double b : {-phi, phi}) {
          pts.push_back(vec_of({0, a, b}));
          pts.push_back(vec_of({a, b, 0}));
          pts.push_back(vec_of({b, 0, a}));
        }
      break;
  }
  for (Vec& p : pts) p *= scale;
  return polytope_from_vertices(pts);
}

Parallelotope make_cube(int n, double half_width) {
  Vec origin = Vec::Constant(n, -half_width);
  Mat edges = 2.0 * half_width * Mat::Identity(n, n);
  return make_parallelotope(origin, edges);
}

Polytope make_triangle_T() {
  return polytope_from_vertices({vec_of({0, -1}), vec_of({0, 1}), vec_of({1, 0})});
}

Parallelotope random_parallelotope(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x9a7a));
  for (int attempt = 0; attempt < 200; ++attempt) {
    Mat edges(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) edges(i, j) = rng.uniform(-1.0, 1.0);
    double colprod = 1.0;
    for (int j = 0; j < n; ++j) colprod *= edges.col(j).norm();
    // Well-conditioned edge sets keep facet geometry away from tolerance limits.
    if (std::abs(edges.determinant()) < 0.2 * colprod) continue;
    Vec origin(n);
    for (int i = 0; i < n; ++i) origin[i] = rng.uniform(-1.0, 1.0);
    return make_parallelotope(origin, edges);
  }
  throw GenerationFailed("random_parallelotope: no well-conditioned draw in 200 tries");
}

Polytope random_tangent_polytope(int n, int k, std::uint64_t seed) {
  if (n < 2 || n > 4)
    throw UnsupportedDimension("random_tangent_polytope: dimension must be 2..4");
  const double cos5deg = std::cos(5.0 * M_PI / 180.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(derive_seed(seed, 0x7a1 + attempt));
    std::vector<HalfSpace> hs;
    bool filled = true;
    for (int i = 0; i < k && filled; ++i) {
      bool placed = false;
      for (int draw = 0; draw < 200; ++draw) {
        Vec u = rng.unit_vec(n);
        bool dup = false;
        for (const HalfSpace& h : hs)
          if (h.normal.dot(u) > cos5deg) {
            dup = true;
            break;
          }
        if (dup) continue;
        HalfSpace h;
        h.normal = u;
        h.offset = 1.0;
        hs.push_back(h);
        placed = true;
        break;
      }
      filled = placed;
    }
    if (!filled) continue;
    try {
      Polytope P = detail::build_from_halfspaces(hs, n);
      InsphereResult ins = chebyshev_center(P);
      // Reject overly stretched draws: spike vertices far from the unit
      // insphere make function ranges explode and integrals uncertifiable.
      double reach = 0.0;
      for (const Vec& v : P.vertices()) reach = std::max(reach, v.norm());
      if (ins.tangent_to_all && std::abs(ins.radius - 1.0) < 1e-7 &&
          ins.center.norm() < 1e-7 && reach <= 6.0)
        return P;
    } catch (const UnboundedRegion&) {
    } catch (const DegenerateInput&) {
    }
  }
  throw GenerationFailed(
      "random_tangent_polytope: no bounded tangent draw in 100 retries "
      "(is k large enough to bound space?)");
}

Cone random_cone(int n, std::uint64_t seed) {
  if (n < 2 || n > 4) throw UnsupportedDimension("random_cone: dimension must be 2..4");
  const int d = n - 1;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng(derive_seed(seed, 0xc0 + attempt));
    Vec u = rng.unit_vec(n);
    Vec o = 0.5 * rng.gaussian_vec(n);
    Mat B = orthonormal_complement(u);
    int count = d + 2 + static_cast<int>(rng.below(3));
    std::vector<Vec> locals;
    for (int i = 0; i < count; ++i) locals.push_back(rng.gaussian_vec(d));
    try {
      Polytope sub = detail::build_polytope(locals, d);
      std::vector<Vec> base;
      for (const Vec& v : sub.vertices()) base.push_back(o + B * v);
      double side = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      Vec apex = o + side * (0.4 + 0.8 * rng.uniform01()) * u +
                 B * (0.5 * rng.gaussian_vec(d));
      return make_cone(base, apex);
    } catch (const DegenerateInput&) {
    }
  }
  throw GenerationFailed("random_cone: generation failed after 100 retries");
}

namespace {

int parse_int_arg(const std::string& tok, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("zoo name: expected an integer for " + what + ", got '" + tok + "'");
  }
}

std::vector<std::string> split_colon(const std::string& s) {
  std::vector<std::string> parts;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ':')) parts.push_back(tok);
  return parts;
}

}  // namespace

Shape zoo_shape(const std::string& raw) {
  std::string name = raw;
  if (name.rfind("zoo:", 0) == 0) name = name.substr(4);
  std::vector<std::string> p = split_colon(name);
  if (p.empty()) throw ParseError("zoo name: empty");

  auto want_args = [&](size_t count) {
    if (p.size() != count + 1)
      throw ParseError("zoo name '" + p[0] + "': expected " + std::to_string(count) +
                       " ':'-separated arguments");
  };

  if (p[0] == "triangle-T") {
    want_args(0);
    return make_triangle_T();
  }
  if (p[0] == "cube") {
    want_args(1);
    return make_cube(parse_int_arg(p[1], "dimension"));
  }
  if (p[0] == "ball") {
    want_args(1);
    int n = parse_int_arg(p[1], "dimension");
    if (n < 2) throw ParseError("zoo name ball:n requires n >= 2");
    return make_ball(n, Vec::Zero(n), 1.0);
  }
  if (p[0] == "regular-polygon") {
    want_args(1);
    int k = parse_int_arg(p[1], "side count");
    if (k < 3) throw ParseError("zoo name regular-polygon:k requires k >= 3");
    return make_regular_polygon(k);
  }
  if (p[0] == "platonic") {
    want_args(1);
    if (p[1] == "tetrahedron") return make_platonic(PlatonicSolid::Tetrahedron);
    if (p[1] == "cube") return make_platonic(PlatonicSolid::Cube);
    if (p[1] == "octahedron") return make_platonic(PlatonicSolid::Octahedron);
    if (p[1] == "dodecahedron") return make_platonic(PlatonicSolid::Dodecahedron);
    if (p[1] == "icosahedron") return make_platonic(PlatonicSolid::Icosahedron);
    throw ParseError("zoo name platonic:<name>: unknown solid '" + p[1] + "'");
  }
  if (p[0] == "random-parallelotope") {
    want_args(2);
    int n = parse_int_arg(p[1], "dimension");
    int s = parse_int_arg(p[2], "seed");
    return random_parallelotope(n, static_cast<std::uint64_t>(s));
  }
  if (p[0] == "random-tangent") {
    want_args(3);
    int n = parse_int_arg(p[1], "dimension");
    int k = parse_int_arg(p[2], "facet count");
    int s = parse_int_arg(p[3], "seed");
    return random_tangent_polytope(n, k, static_cast<std::uint64_t>(s));
  }
  if (p[0] == "random-cone") {
    want_args(2);
    int n = parse_int_arg(p[1], "dimension");
    int s = parse_int_arg(p[2], "seed");
    return random_cone(n, static_cast<std::uint64_t>(s));
  }
  throw ParseError("zoo name: unknown shape '" + p[0] + "'");
}

std::vector<std::pair<std::string, std::string>> zoo_catalog() {
  return {
      {"triangle-T", "the counterexample triangle (0,-1), (0,1), (1,0)"},
      {"cube:n", "axis cube [-1,1]^n as a parallelotope"},
      {"ball:n", "unit ball centered at the origin"},
      {"regular-polygon:k", "regular k-gon with circumradius 1"},
      {"platonic:<name>", "tetrahedron | cube | octahedron | dodecahedron | icosahedron"},
      {"random-parallelotope:n:seed", "seeded random parallelotope with edges in [-1,1]^n"},
      {"random-tangent:n:k:seed", "seeded random polytope with k facets tangent to the unit sphere"},
      {"random-cone:n:seed", "seeded random cone over a random flat base"},
  };
}

}  // namespace jensen
