#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "jensen/checker.hpp"
#include "jensen/errors.hpp"
#include "jensen/insphere.hpp"
#include "jensen/io.hpp"
#include "jensen/measures.hpp"
#include "jensen/search.hpp"
#include "jensen/zoo.hpp"

using namespace jensen;
using nlohmann::json;

namespace {

struct Options {
  std::string shape_spec;
  std::string suite_spec = "std";
  std::string out_path;
  std::string format = "json";
  double eps = 1e-6;
  std::uint64_t seed = 0;
  int pieces = 2;
  int restarts = 8;
  std::int64_t budget = 10000;
  std::string zoo_name;
};

void add_shape_arg(CLI::App* sub, Options& opt) {
  sub->add_option("SHAPE", opt.shape_spec, "shape file or zoo name (zoo:triangle-T)");
  sub->add_option("--shape", opt.shape_spec, "shape file or zoo name");
}

void add_output_flags(CLI::App* sub, Options& opt) {
  sub->add_option("--out", opt.out_path, "write the report to this file");
  sub->add_option("--format", opt.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

Shape required_shape(const Options& opt) {
  if (opt.shape_spec.empty())
    throw ParseError("missing shape argument (file path or zoo:name)");
  return load_shape(opt.shape_spec);
}

// Facet-based subcommands need an explicit polytope behind the shape.
Polytope required_polytope(const Shape& s) {
  const Polytope* p = realized_polytope(s);
  if (!p)
    throw ParseError("shape kind '" + shape_kind(s) +
                     "' has no realized facet structure; give a polytope");
  return *p;
}

void emit(const Options& opt, const std::string& text) {
  if (opt.out_path.empty())
    std::cout << text << "\n";
  else
    write_text_file(opt.out_path, text);
}

QuadratureRequest request_for(const Options& opt) {
  QuadratureRequest req;
  req.target_error = opt.eps;
  req.seed = opt.seed;
  return req;
}

std::vector<ConvexFn> suite_for(const Options& opt, const Shape& shape) {
  if (opt.suite_spec == "std")
    return standard_suite(shape_dim(shape), shape_body_centroid(shape), opt.seed);
  return load_functions_file(opt.suite_spec);
}

int run_check(const Options& opt) {
  Shape shape = required_shape(opt);
  JensenReport rep = jensen_verdict(shape, suite_for(opt, shape), request_for(opt));
  emit(opt, opt.format == "csv" ? report_to_csv(rep) : report_to_json(rep).dump(2));
  return rep.counterexample_found ? 1 : 0;
}

int run_centroids(const Options& opt) {
  if (opt.format == "csv") throw ParseError("centroids supports --format json only");
  emit(opt, centroid_report_to_json(centroid_report(required_shape(opt))).dump(2));
  return 0;
}

int run_insphere(const Options& opt) {
  if (opt.format == "csv") throw ParseError("insphere supports --format json only");
  Polytope poly = required_polytope(required_shape(opt));
  emit(opt, insphere_to_json(chebyshev_center(poly)).dump(2));
  return 0;
}

int run_bound(const Options& opt) {
  Shape shape = required_shape(opt);
  Polytope poly = required_polytope(shape);
  QuadratureRequest req = request_for(opt);
  auto suite = standard_suite(poly.dim(), poly.body_centroid(), opt.seed);

  json rows = json::array();
  std::string csv =
      "function,lhs,lhsErrorBound,rhsTheorem,rhsCorollary,holdsTheorem,holdsCorollary\n";
  for (const ConvexFn& f : suite) {
    InsphereBoundResult r = insphere_bound_check(poly, f, req);
    rows.push_back({{"function", describe(f)},
                    {"lhs", estimate_to_json(r.lhs)},
                    {"rhsTheorem", r.rhs_theorem},
                    {"rhsCorollary", r.rhs_corollary},
                    {"rhsTheoremBound", r.rhs_theorem_bound},
                    {"rhsCorollaryBound", r.rhs_corollary_bound},
                    {"holdsTheorem", r.holds_theorem},
                    {"holdsCorollary", r.holds_corollary}});
    char line[256];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%s,%s\n", r.lhs.value,
                  r.lhs.error_bound, r.rhs_theorem, r.rhs_corollary,
                  r.holds_theorem ? "true" : "false",
                  r.holds_corollary ? "true" : "false");
    csv += "\"" + describe(f) + "\"," + line;
  }
  if (opt.format == "csv") {
    emit(opt, csv);
  } else {
    json doc = {{"shape", describe_shape(shape)},
                {"insphere", insphere_to_json(chebyshev_center(poly))},
                {"results", rows}};
    emit(opt, doc.dump(2));
  }
  return 0;
}

int run_conecheck(const Options& opt) {
  Shape shape = required_shape(opt);
  const auto* cone = std::get_if<Cone>(&shape);
  if (!cone) throw ParseError("conecheck needs a cone shape file or zoo:random-cone:n:seed");
  QuadratureRequest req = request_for(opt);
  auto suite = standard_suite(cone->dim(), shape_body_centroid(shape), opt.seed);

  json rows = json::array();
  std::string csv = "function,lhs,lhsErrorBound,rhs,rhsBound,holds\n";
  for (const ConvexFn& f : suite) {
    ConeBoundResult r = cone_bound_check(*cone, f, req);
    rows.push_back({{"function", describe(f)},
                    {"lhs", estimate_to_json(r.lhs)},
                    {"rhs", r.rhs},
                    {"rhsBound", r.rhs_bound},
                    {"holds", r.holds}});
    char line[192];
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%s\n", r.lhs.value,
                  r.lhs.error_bound, r.rhs, r.rhs_bound, r.holds ? "true" : "false");
    csv += "\"" + describe(f) + "\"," + line;
  }
  if (opt.format == "csv") {
    emit(opt, csv);
  } else {
    json doc = {{"shape", describe_shape(shape)}, {"results", rows}};
    emit(opt, doc.dump(2));
  }
  return 0;
}

int run_search(const Options& opt) {
  if (opt.format == "csv") throw ParseError("search supports --format json only");
  Shape shape = required_shape(opt);
  SearchResult r =
      maxaffine_search(shape, opt.pieces, opt.restarts, opt.budget, opt.seed);
  emit(opt, search_result_to_json(r).dump(2));
  return r.certificate.verdict == Verdict::violated ? 1 : 0;
}

int run_zoo_list(const Options& opt) {
  json rows = json::array();
  for (const auto& [pattern, description] : zoo_catalog())
    rows.push_back({{"pattern", pattern}, {"description", description}});
  emit(opt, rows.dump(2));
  return 0;
}

int run_zoo_emit(const Options& opt) {
  emit(opt, shape_to_json(zoo_shape(opt.zoo_name)).dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for body-vs-boundary mean inequalities of convex functions"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* check = app.add_subcommand("check", "run the full gap report on a shape");
  add_shape_arg(check, opt);
  check->add_option("--suite", opt.suite_spec, "std or a function JSON file");
  check->add_option("--eps", opt.eps, "quadrature target error");
  check->add_option("--seed", opt.seed, "random seed");
  add_output_flags(check, opt);

  CLI::App* centroids = app.add_subcommand("centroids", "body and boundary centroids");
  add_shape_arg(centroids, opt);
  add_output_flags(centroids, opt);

  CLI::App* insphere = app.add_subcommand("insphere", "largest inscribed ball and tangency");
  add_shape_arg(insphere, opt);
  add_output_flags(insphere, opt);

  CLI::App* bound = app.add_subcommand(
      "bound", "insphere-based upper bounds for body means over the standard suite");
  add_shape_arg(bound, opt);
  bound->add_option("--eps", opt.eps, "quadrature target error");
  bound->add_option("--seed", opt.seed, "random seed");
  add_output_flags(bound, opt);

  CLI::App* conecheck =
      app.add_subcommand("conecheck", "cone inequality over the standard suite");
  add_shape_arg(conecheck, opt);
  conecheck->add_option("--eps", opt.eps, "quadrature target error");
  conecheck->add_option("--seed", opt.seed, "random seed");
  add_output_flags(conecheck, opt);

  CLI::App* search = app.add_subcommand("search", "search for a violating max-affine function");
  add_shape_arg(search, opt);
  search->add_option("--pieces", opt.pieces, "max-affine piece count");
  search->add_option("--restarts", opt.restarts, "parallel restarts");
  search->add_option("--budget", opt.budget, "objective evaluation budget");
  search->add_option("--seed", opt.seed, "random seed");
  add_output_flags(search, opt);

  CLI::App* zoo = app.add_subcommand("zoo", "named shape catalog");
  zoo->require_subcommand(1);
  CLI::App* zoo_list = zoo->add_subcommand("list", "list catalog patterns");
  add_output_flags(zoo_list, opt);
  CLI::App* zoo_emit = zoo->add_subcommand("emit", "write a shape file for a zoo name");
  zoo_emit->add_option("name", opt.zoo_name, "zoo name, e.g. platonic:cube")->required();
  add_output_flags(zoo_emit, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) return run_check(opt);
    if (centroids->parsed()) return run_centroids(opt);
    if (insphere->parsed()) return run_insphere(opt);
    if (bound->parsed()) return run_bound(opt);
    if (conecheck->parsed()) return run_conecheck(opt);
    if (search->parsed()) return run_search(opt);
    if (zoo->parsed()) {
      if (zoo_list->parsed()) return run_zoo_list(opt);
      return run_zoo_emit(opt);
    }
  } catch (const Error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
