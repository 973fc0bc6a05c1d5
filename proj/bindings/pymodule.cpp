#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jensen/checker.hpp"
#include "jensen/errors.hpp"
#include "jensen/insphere.hpp"
#include "jensen/io.hpp"
#include "jensen/measures.hpp"
#include "jensen/quadrature.hpp"
#include "jensen/search.hpp"
#include "jensen/zoo.hpp"

// Shape and ConvexFn are std::variant aliases. stl.h would otherwise unpack
// them alternative-by-alternative; keep them as the opaque classes bound below.
namespace pybind11::detail {
template <>
class type_caster<jensen::Shape> : public type_caster_base<jensen::Shape> {};
template <>
class type_caster<jensen::ConvexFn> : public type_caster_base<jensen::ConvexFn> {};
}  // namespace pybind11::detail

namespace py = pybind11;
using namespace jensen;

namespace {

Vec to_vec(const std::vector<double>& v) {
  Vec x(v.size());
  for (size_t i = 0; i < v.size(); ++i) x[static_cast<int>(i)] = v[i];
  return x;
}

std::vector<double> from_vec(const Vec& v) {
  return {v.data(), v.data() + v.size()};
}

std::vector<Vec> to_points(const std::vector<std::vector<double>>& pts) {
  std::vector<Vec> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(to_vec(p));
  return out;
}

QuadratureRequest make_request(double eps, double mc_eps, std::uint64_t seed) {
  QuadratureRequest req;
  req.target_error = eps;
  req.mc_target_error = mc_eps;
  req.seed = seed;
  return req;
}

Polytope required_polytope(const Shape& s) {
  const Polytope* p = realized_polytope(s);
  if (!p)
    throw DegenerateInput("shape kind '" + shape_kind(s) +
                          "' has no realized facet structure; give a polytope");
  return *p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Numerical checks of body-vs-boundary mean inequalities for convex "
      "functions over convex bodies. Structured results are returned as JSON "
      "strings; the jensentk package decodes them to dictionaries.";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_RuntimeError, e.what());
    }
  });

  py::class_<Shape>(m, "Shape")
      .def_property_readonly("kind", &shape_kind)
      .def_property_readonly("dim", &shape_dim)
      .def("__repr__",
           [](const Shape& s) { return "<jensentk.Shape: " + describe_shape(s) + ">"; });

  py::class_<ConvexFn>(m, "ConvexFn")
      .def("__call__",
           [](const ConvexFn& f, const std::vector<double>& x) {
             return evaluate(f, to_vec(x));
           })
      .def("__repr__",
           [](const ConvexFn& f) { return "<jensentk.ConvexFn: " + describe(f) + ">"; });

  // shape constructors
  m.def("zoo", [](const std::string& name) { return zoo_shape(name); },
        py::arg("name"));
  m.def("zoo_catalog", [] { return zoo_catalog(); });
  m.def("polytope",
        [](const std::vector<std::vector<double>>& vertices) {
          return Shape{polytope_from_vertices(to_points(vertices))};
        },
        py::arg("vertices"));
  m.def("parallelotope",
        [](const std::vector<double>& origin,
           const std::vector<std::vector<double>>& edges) {
          Vec o = to_vec(origin);
          const int n = static_cast<int>(o.size());
          if (static_cast<int>(edges.size()) != n)
            throw ParseError("parallelotope needs exactly dim edge vectors");
          Mat E(n, n);
          for (int c = 0; c < n; ++c) {
            if (static_cast<int>(edges[c].size()) != n)
              throw ParseError("parallelotope edge vectors must match dim");
            E.col(c) = to_vec(edges[c]);
          }
          return Shape{make_parallelotope(o, E)};
        },
        py::arg("origin"), py::arg("edges"));
  m.def("ball",
        [](int n, const std::vector<double>& center, double radius) {
          return Shape{make_ball(n, to_vec(center), radius)};
        },
        py::arg("n"), py::arg("center"), py::arg("radius"));
  m.def("cone",
        [](const std::vector<std::vector<double>>& base_vertices,
           const std::vector<double>& apex) {
          return Shape{make_cone(to_points(base_vertices), to_vec(apex))};
        },
        py::arg("base_vertices"), py::arg("apex"));
  m.def("shape_from_json",
        [](const std::string& text) {
          return shape_from_json(parse_json_text(text, "shape"));
        },
        py::arg("text"));
  m.def("shape_to_json", [](const Shape& s) { return shape_to_json(s).dump(); },
        py::arg("shape"));
  m.def("describe_shape", &describe_shape, py::arg("shape"));

  // function constructors
  m.def("affine",
        [](const std::vector<double>& a, double b) {
          return ConvexFn{Affine{to_vec(a), b}};
        },
        py::arg("a"), py::arg("b") = 0.0);
  m.def("maxaffine",
        [](const std::vector<std::pair<std::vector<double>, double>>& pieces) {
          std::vector<Affine> ps;
          ps.reserve(pieces.size());
          for (const auto& [a, b] : pieces) ps.push_back({to_vec(a), b});
          return ConvexFn{MaxAffine(ps)};
        },
        py::arg("pieces"));
  m.def("quadform",
        [](const std::vector<std::vector<double>>& factor_rows,
           const std::vector<double>& a, double b) {
          Vec av = to_vec(a);
          Mat G(factor_rows.size(), av.size());
          for (size_t r = 0; r < factor_rows.size(); ++r) {
            if (factor_rows[r].size() != a.size())
              throw ParseError("quadform factor rows must match len(a)");
            G.row(static_cast<int>(r)) = to_vec(factor_rows[r]).transpose();
          }
          return ConvexFn{QuadForm(G, av, b)};
        },
        py::arg("factor"), py::arg("a"), py::arg("b") = 0.0);
  m.def("pnorm",
        [](double p, const std::vector<double>& center) {
          return ConvexFn{PNorm(p, to_vec(center))};
        },
        py::arg("p"), py::arg("center"));
  m.def("expaffine",
        [](const std::vector<double>& a, double b) {
          return ConvexFn{ExpAffine(to_vec(a), b)};
        },
        py::arg("a"), py::arg("b") = 0.0);
  m.def("coordproj",
        [](int i, int sign) { return ConvexFn{CoordProj(i, sign)}; },
        py::arg("i"), py::arg("sign") = 1);
  m.def("standard_suite",
        [](int n, const std::vector<double>& center, std::uint64_t seed) {
          return standard_suite(n, to_vec(center), seed);
        },
        py::arg("n"), py::arg("center"), py::arg("seed") = 0);
  m.def("describe", [](const ConvexFn& f) { return describe(f); }, py::arg("fn"));
  m.def("functions_from_json",
        [](const std::string& text) {
          return functions_from_json(parse_json_text(text, "function file"));
        },
        py::arg("text"));
  m.def("functions_to_json",
        [](const std::vector<ConvexFn>& fns) { return functions_to_json(fns).dump(); },
        py::arg("fns"));

  // measures and geometry
  m.def("volume", &shape_volume, py::arg("shape"));
  m.def("surface", &shape_surface, py::arg("shape"));
  m.def("body_centroid",
        [](const Shape& s) { return from_vec(shape_body_centroid(s)); },
        py::arg("shape"));
  m.def("boundary_centroid",
        [](const Shape& s) { return from_vec(shape_boundary_centroid(s)); },
        py::arg("shape"));
  m.def("centroid_report_json",
        [](const Shape& s) { return centroid_report_to_json(centroid_report(s)).dump(); },
        py::arg("shape"));
  m.def("chebyshev_center_json",
        [](const Shape& s) { return insphere_to_json(chebyshev_center(required_polytope(s))).dump(); },
        py::arg("shape"));

  // quadrature
  m.def("mean_over_body_json",
        [](const Shape& s, const ConvexFn& f, double eps, double mc_eps,
           std::uint64_t seed) {
          return estimate_to_json(mean_over_body(s, f, make_request(eps, mc_eps, seed)))
              .dump();
        },
        py::arg("shape"), py::arg("fn"), py::arg("eps") = 1e-6,
        py::arg("mc_eps") = 1e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("mean_over_boundary_json",
        [](const Shape& s, const ConvexFn& f, double eps, double mc_eps,
           std::uint64_t seed) {
          return estimate_to_json(
                     mean_over_boundary(s, f, make_request(eps, mc_eps, seed)))
              .dump();
        },
        py::arg("shape"), py::arg("fn"), py::arg("eps") = 1e-6,
        py::arg("mc_eps") = 1e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

  // inequality checks
  m.def("jensen_gap_json",
        [](const Shape& s, const ConvexFn& f, double eps, double mc_eps,
           std::uint64_t seed) {
          return gap_to_json(jensen_gap(s, f, make_request(eps, mc_eps, seed))).dump();
        },
        py::arg("shape"), py::arg("fn"), py::arg("eps") = 1e-6,
        py::arg("mc_eps") = 1e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("jensen_verdict_json",
        [](const Shape& s, const std::vector<ConvexFn>& suite, double eps,
           double mc_eps, std::uint64_t seed) {
          return report_to_json(jensen_verdict(s, suite, make_request(eps, mc_eps, seed)))
              .dump();
        },
        py::arg("shape"), py::arg("suite"), py::arg("eps") = 1e-6,
        py::arg("mc_eps") = 1e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("report_csv",
        [](const Shape& s, const std::vector<ConvexFn>& suite, double eps,
           double mc_eps, std::uint64_t seed) {
          return report_to_csv(jensen_verdict(s, suite, make_request(eps, mc_eps, seed)));
        },
        py::arg("shape"), py::arg("suite"), py::arg("eps") = 1e-6,
        py::arg("mc_eps") = 1e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("cone_bound_json",
        [](const Shape& s, const ConvexFn& f, double eps, double mc_eps,
           std::uint64_t seed) {
          const auto* cone = std::get_if<Cone>(&s);
          if (!cone) throw DegenerateInput("cone_bound needs a cone shape");
          ConeBoundResult r = cone_bound_check(*cone, f, make_request(eps, mc_eps, seed));
          return nlohmann::json{{"lhs", estimate_to_json(r.lhs)},
                                {"rhs", r.rhs},
                                {"rhsBound", r.rhs_bound},
                                {"holds", r.holds}}
              .dump();
        },
        py::arg("shape"), py::arg("fn"), py::arg("eps") = 1e-6,
        py::arg("mc_eps") = 1e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("insphere_bound_json",
        [](const Shape& s, const ConvexFn& f, double eps, double mc_eps,
           std::uint64_t seed) {
          InsphereBoundResult r = insphere_bound_check(required_polytope(s), f,
                                                       make_request(eps, mc_eps, seed));
          return nlohmann::json{{"lhs", estimate_to_json(r.lhs)},
                                {"rhsTheorem", r.rhs_theorem},
                                {"rhsCorollary", r.rhs_corollary},
                                {"rhsTheoremBound", r.rhs_theorem_bound},
                                {"rhsCorollaryBound", r.rhs_corollary_bound},
                                {"holdsTheorem", r.holds_theorem},
                                {"holdsCorollary", r.holds_corollary}}
              .dump();
        },
        py::arg("shape"), py::arg("fn"), py::arg("eps") = 1e-6,
        py::arg("mc_eps") = 1e-4, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());

  // counterexample search
  m.def("affine_worst_case",
        [](const Shape& s) {
          auto [dir, violation] = affine_worst_case(s);
          return std::make_pair(from_vec(dir), violation);
        },
        py::arg("shape"));
  m.def("maxaffine_search_json",
        [](const Shape& s, int pieces, int restarts, std::int64_t budget,
           std::uint64_t seed) {
          return search_result_to_json(maxaffine_search(s, pieces, restarts, budget, seed))
              .dump();
        },
        py::arg("shape"), py::arg("pieces") = 2, py::arg("restarts") = 8,
        py::arg("budget") = 10000, py::arg("seed") = 0,
        py::call_guard<py::gil_scoped_release>());
}
