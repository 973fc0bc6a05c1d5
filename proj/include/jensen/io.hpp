#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "jensen/checker.hpp"
#include "jensen/convexfn.hpp"
#include "jensen/insphere.hpp"
#include "jensen/measures.hpp"
#include "jensen/search.hpp"
#include "jensen/shapes.hpp"

namespace jensen {

// Shape files are JSON objects with a "kind" tag:
//   {"kind":"polytope","vertices":[[...],...]}
//   {"kind":"halfspaces","normals":[[...],...],"offsets":[...]}
//   {"kind":"parallelotope","origin":[...],"edges":[[...],...]}
//   {"kind":"ball","dim":N,"center":[...],"radius":R}
//   {"kind":"cone","baseVertices":[[...],...],"apex":[...]}
//   {"kind":"zoo","name":"platonic:icosahedron"}
// Function files are JSON arrays of objects tagged the same way:
//   affine | maxaffine | quadform | pnorm | expaffine | coordproj.
// All parsers throw ParseError naming the offending field.

Shape shape_from_json(const nlohmann::json& j);
nlohmann::json shape_to_json(const Shape& s);

ConvexFn function_from_json(const nlohmann::json& j);
nlohmann::json function_to_json(const ConvexFn& f);
std::vector<ConvexFn> functions_from_json(const nlohmann::json& j);
nlohmann::json functions_to_json(const std::vector<ConvexFn>& fns);

nlohmann::json estimate_to_json(const Estimate& e);
nlohmann::json gap_to_json(const GapResult& r);
nlohmann::json report_to_json(const JensenReport& rep);
nlohmann::json centroid_report_to_json(const CentroidReport& r);
nlohmann::json insphere_to_json(const InsphereResult& r);
nlohmann::json search_result_to_json(const SearchResult& r);

// One row per suite function: shape, function, bodyMean, boundaryMean, gap,
// errorBound, verdict. Strings are quoted, numbers carry 17 significant
// digits.
std::string report_to_csv(const JensenReport& rep);

// Parses text (file contents or inline JSON); wraps json syntax errors in
// ParseError.
nlohmann::json parse_json_text(const std::string& text, const std::string& what);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Loads a shape from a JSON file path or a zoo name ("zoo:triangle-T" or a
// bare catalog name like "platonic:cube").
Shape load_shape(const std::string& spec);

std::vector<ConvexFn> load_functions_file(const std::string& path);

}  // namespace jensen
