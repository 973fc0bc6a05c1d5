#include "jensen/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "jensen/errors.hpp"
#include "jensen/zoo.hpp"

namespace jensen {

using nlohmann::json;

namespace {

const json& require_field(const json& j, const std::string& field,
                          const std::string& ctx) {
  if (!j.is_object() || !j.contains(field))
    throw ParseError(ctx + ": missing field '" + field + "'");
  return j.at(field);
}

double num_field(const json& j, const std::string& field, const std::string& ctx) {
  const json& v = require_field(j, field, ctx);
  if (!v.is_number()) throw ParseError(ctx + ": field '" + field + "' must be a number");
  return v.get<double>();
}

int int_field(const json& j, const std::string& field, const std::string& ctx) {
  const json& v = require_field(j, field, ctx);
  if (!v.is_number_integer())
    throw ParseError(ctx + ": field '" + field + "' must be an integer");
  return v.get<int>();
}

std::string str_field(const json& j, const std::string& field, const std::string& ctx) {
  const json& v = require_field(j, field, ctx);
  if (!v.is_string()) throw ParseError(ctx + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

Vec vec_from(const json& v, const std::string& field) {
  if (!v.is_array() || v.empty())
    throw ParseError("field '" + field + "' must be a non-empty array of numbers");
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number())
      throw ParseError("field '" + field + "' must contain only numbers");
    out[static_cast<int>(i)] = v[i].get<double>();
  }
  return out;
}

Vec vec_field(const json& j, const std::string& field, const std::string& ctx) {
  return vec_from(require_field(j, field, ctx), field);
}

std::vector<Vec> points_field(const json& j, const std::string& field,
                              const std::string& ctx) {
  const json& v = require_field(j, field, ctx);
  if (!v.is_array() || v.empty())
    throw ParseError(ctx + ": field '" + field + "' must be a non-empty array");
  std::vector<Vec> pts;
  pts.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    pts.push_back(vec_from(v[i], field + "[" + std::to_string(i) + "]"));
    if (pts.back().size() != pts.front().size())
      throw ParseError(ctx + ": field '" + field + "' has rows of unequal length");
  }
  return pts;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json points_to_json(const std::vector<Vec>& pts) {
  json a = json::array();
  for (const Vec& p : pts) a.push_back(vec_to_json(p));
  return a;
}

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Shape shape_from_json(const json& j) {
  std::string kind = str_field(j, "kind", "shape");
  if (kind == "polytope") {
    return Shape{polytope_from_vertices(points_field(j, "vertices", "shape"))};
  }
  if (kind == "halfspaces") {
    std::vector<Vec> normals = points_field(j, "normals", "shape");
    const json& off = require_field(j, "offsets", "shape");
    if (!off.is_array() || off.size() != normals.size())
      throw ParseError("shape: field 'offsets' must match 'normals' in length");
    std::vector<HalfSpace> hs;
    for (size_t i = 0; i < normals.size(); ++i) {
      if (!off[i].is_number())
        throw ParseError("shape: field 'offsets' must contain only numbers");
      double nrm = normals[i].norm();
      if (nrm < 1e-12)
        throw ParseError("shape: field 'normals[" + std::to_string(i) + "]' is zero");
      hs.emplace_back();
      hs.back().normal = normals[i] / nrm;
      hs.back().offset = off[i].get<double>() / nrm;
    }
    return Shape{polytope_from_halfspaces(hs)};
  }
  if (kind == "parallelotope") {
    Vec origin = vec_field(j, "origin", "shape");
    std::vector<Vec> edges = points_field(j, "edges", "shape");
    const int n = static_cast<int>(origin.size());
    if (static_cast<int>(edges.size()) != n || edges.front().size() != n)
      throw ParseError("shape: field 'edges' must hold exactly dim vectors of dim entries");
    Mat E(n, n);
    for (int c = 0; c < n; ++c) E.col(c) = edges[c];
    return Shape{make_parallelotope(origin, E)};
  }
  if (kind == "ball") {
    int dim = int_field(j, "dim", "shape");
    Vec center = vec_field(j, "center", "shape");
    if (center.size() != dim)
      throw ParseError("shape: field 'center' length must equal field 'dim'");
    return Shape{make_ball(dim, center, num_field(j, "radius", "shape"))};
  }
  if (kind == "cone") {
    return Shape{make_cone(points_field(j, "baseVertices", "shape"),
                           vec_field(j, "apex", "shape"))};
  }
  if (kind == "zoo") {
    return zoo_shape(str_field(j, "name", "shape"));
  }
  throw ParseError("shape: unknown kind '" + kind + "'");
}

json shape_to_json(const Shape& s) {
  json j;
  if (const auto* p = std::get_if<Polytope>(&s)) {
    j["kind"] = "polytope";
    j["vertices"] = points_to_json(p->vertices());
  } else if (const auto* p = std::get_if<Parallelotope>(&s)) {
    j["kind"] = "parallelotope";
    j["origin"] = vec_to_json(p->origin);
    json edges = json::array();
    for (int c = 0; c < p->edges.cols(); ++c) edges.push_back(vec_to_json(p->edges.col(c)));
    j["edges"] = edges;
  } else if (const auto* b = std::get_if<Ball>(&s)) {
    j["kind"] = "ball";
    j["dim"] = b->dim();
    j["center"] = vec_to_json(b->center);
    j["radius"] = b->radius;
  } else {
    const Cone& c = std::get<Cone>(s);
    j["kind"] = "cone";
    j["baseVertices"] = points_to_json(c.base_vertices);
    j["apex"] = vec_to_json(c.apex);
  }
  return j;
}

ConvexFn function_from_json(const json& j) {
  std::string kind = str_field(j, "kind", "function");
  if (kind == "affine") {
    return Affine{vec_field(j, "a", "function"), num_field(j, "b", "function")};
  }
  if (kind == "maxaffine") {
    const json& pj = require_field(j, "pieces", "function");
    if (!pj.is_array() || pj.empty())
      throw ParseError("function: field 'pieces' must be a non-empty array");
    std::vector<Affine> pieces;
    for (const json& p : pj) {
      pieces.push_back({vec_field(p, "a", "maxaffine piece"),
                        num_field(p, "b", "maxaffine piece")});
      if (pieces.back().a.size() != pieces.front().a.size())
        throw ParseError("function: field 'pieces' mixes dimensions");
    }
    return MaxAffine(pieces);
  }
  if (kind == "quadform") {
    std::vector<Vec> rows = points_field(j, "factor", "function");
    Vec a = vec_field(j, "a", "function");
    if (rows.front().size() != a.size())
      throw ParseError("function: field 'factor' columns must match field 'a'");
    Mat G(rows.size(), a.size());
    for (size_t r = 0; r < rows.size(); ++r) G.row(static_cast<int>(r)) = rows[r];
    return QuadForm(G, a, num_field(j, "b", "function"));
  }
  if (kind == "pnorm") {
    double p = num_field(j, "p", "function");
    if (p < 1.0) throw ParseError("function: field 'p' must be >= 1");
    return PNorm(p, vec_field(j, "center", "function"));
  }
  if (kind == "expaffine") {
    return ExpAffine(vec_field(j, "a", "function"), num_field(j, "b", "function"));
  }
  if (kind == "coordproj") {
    int i = int_field(j, "i", "function");
    int sign = int_field(j, "sign", "function");
    if (i < 1) throw ParseError("function: field 'i' must be >= 1");
    if (sign != 1 && sign != -1) throw ParseError("function: field 'sign' must be +-1");
    return CoordProj(i, sign);
  }
  throw ParseError("function: unknown kind '" + kind + "'");
}

json function_to_json(const ConvexFn& f) {
  json j;
  if (const auto* a = std::get_if<Affine>(&f)) {
    j["kind"] = "affine";
    j["a"] = vec_to_json(a->a);
    j["b"] = a->b;
  } else if (const auto* m = std::get_if<MaxAffine>(&f)) {
    j["kind"] = "maxaffine";
    json pieces = json::array();
    for (const Affine& p : m->pieces)
      pieces.push_back({{"a", vec_to_json(p.a)}, {"b", p.b}});
    j["pieces"] = pieces;
  } else if (const auto* q = std::get_if<QuadForm>(&f)) {
    j["kind"] = "quadform";
    json rows = json::array();
    for (int r = 0; r < q->factor.rows(); ++r)
      rows.push_back(vec_to_json(q->factor.row(r).transpose()));
    j["factor"] = rows;
    j["a"] = vec_to_json(q->a);
    j["b"] = q->b;
  } else if (const auto* p = std::get_if<PNorm>(&f)) {
    j["kind"] = "pnorm";
    j["p"] = p->p;
    j["center"] = vec_to_json(p->center);
  } else if (const auto* e = std::get_if<ExpAffine>(&f)) {
    j["kind"] = "expaffine";
    j["a"] = vec_to_json(e->a);
    j["b"] = e->b;
  } else {
    const CoordProj& c = std::get<CoordProj>(f);
    j["kind"] = "coordproj";
    j["i"] = c.index;
    j["sign"] = c.sign;
  }
  return j;
}

std::vector<ConvexFn> functions_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("function file: top level must be a non-empty array");
  std::vector<ConvexFn> fns;
  fns.reserve(j.size());
  for (const json& e : j) fns.push_back(function_from_json(e));
  return fns;
}

json functions_to_json(const std::vector<ConvexFn>& fns) {
  json a = json::array();
  for (const ConvexFn& f : fns) a.push_back(function_to_json(f));
  return a;
}

json estimate_to_json(const Estimate& e) {
  return {{"value", e.value},
          {"errorBound", e.error_bound},
          {"method", method_name(e.method)},
          {"evaluations", e.evaluations}};
}

json gap_to_json(const GapResult& r) {
  json j = {{"bodyMean", estimate_to_json(r.body_mean)},
            {"boundaryMean", estimate_to_json(r.boundary_mean)},
            {"gap", r.gap},
            {"gapErrorBound", r.gap_error_bound},
            {"verdict", verdict_name(r.verdict)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json insphere_to_json(const InsphereResult& r) {
  return {{"center", vec_to_json(r.center)},
          {"radius", r.radius},
          {"facetGaps", vec_to_json(r.facet_gaps)},
          {"worstFacetGap", r.worst_facet_gap},
          {"tangentToAll", r.tangent_to_all},
          {"centerUnique", r.center_unique}};
}

json report_to_json(const JensenReport& rep) {
  json suite = json::array();
  for (const SuiteEntry& e : rep.suite)
    suite.push_back({{"function", e.function}, {"result", gap_to_json(e.result)}});
  json identities = json::array();
  for (const IdentityResidual& id : rep.identities)
    identities.push_back({{"name", id.name}, {"residual", id.residual}});
  json j = {{"shape", rep.shape},
            {"suite", suite},
            {"centroidGap", rep.centroid_gap},
            {"identities", identities},
            {"counterexampleFound", rep.counterexample_found},
            {"conclusion", rep.conclusion},
            {"caveat", rep.caveat}};
  j["insphere"] = rep.insphere ? insphere_to_json(*rep.insphere) : json(nullptr);
  return j;
}

json centroid_report_to_json(const CentroidReport& r) {
  return {{"bodyCentroid", vec_to_json(r.body_centroid)},
          {"boundaryCentroid", vec_to_json(r.boundary_centroid)},
          {"gap", r.gap},
          {"coincide", r.coincide}};
}

json search_result_to_json(const SearchResult& r) {
  return {{"bestFunction", function_to_json(ConvexFn{r.best_function})},
          {"bestViolation", r.best_violation},
          {"certificate", gap_to_json(r.certificate)},
          {"trace",
           {{"restartBest", r.trace.restart_best},
            {"evaluations", r.trace.evaluations},
            {"budgetExhausted", r.trace.budget_exhausted},
            {"note", r.trace.note}}}};
}

std::string report_to_csv(const JensenReport& rep) {
  std::string out = "shape,function,bodyMean,boundaryMean,gap,errorBound,verdict\n";
  for (const SuiteEntry& e : rep.suite) {
    out += csv_quote(rep.shape) + ',' + csv_quote(e.function) + ',';
    out += fmt17(e.result.body_mean.value) + ',';
    out += fmt17(e.result.boundary_mean.value) + ',';
    out += fmt17(e.result.gap) + ',';
    out += fmt17(e.result.gap_error_bound) + ',';
    out += verdict_name(e.result.verdict) + '\n';
  }
  return out;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file '" + path + "' for writing");
  out << text;
  if (!out.good()) throw ParseError("failed writing file '" + path + "'");
}

Shape load_shape(const std::string& spec) {
  if (spec.rfind("zoo:", 0) == 0) return zoo_shape(spec.substr(4));
  if (std::filesystem::exists(spec))
    return shape_from_json(parse_json_text(read_text_file(spec), "shape file"));
  // Not a file: fall back to a bare zoo name like "platonic:cube".
  return zoo_shape(spec);
}

std::vector<ConvexFn> load_functions_file(const std::string& path) {
  return functions_from_json(parse_json_text(read_text_file(path), "function file"));
}

}  // namespace jensen
