#pragma once

// JSON forms of the library values. Objects are written with sorted keys
// and parse back to equal values.

#include <string>

#include <json.hpp>

#include "mmcbrace/census.hpp"

namespace mmc {

using Json = nlohmann::json;

Json to_json(const GroupShape& shape);  // "2,16"
Json to_json(const GroupElement& x);    // [1, 3]
Json to_json(const AutMatrix& a);       // row-major entries
Json to_json(const HolElement& g);      // {"aut", "trans"}
Json to_json(const BraceTable& t);      // {"add", "circ", "size"}
Json to_json(const Cocycle& c);         // {"S", "T", "family", "gamma_a", "gamma_b", "shape"}
Json to_json(const CensusRecord& r);
Json to_json(const Census& c);

GroupShape shape_from_json(const Json& j);
GroupElement element_from_json(const GroupShape& shape, const Json& j);
AutMatrix aut_from_json(const GroupShape& shape, const Json& j);
HolElement hol_from_json(const GroupShape& shape, const Json& j);
BraceTable brace_from_json(const Json& j);
Cocycle cocycle_from_json(const Json& j);
// Rebuilds every record from its generators and checks the stored keys,
// socles and class sizes against the rebuilt data.
Census census_from_json(const Json& j);

// Two-space indentation and a trailing newline.
std::string dump_json(const Json& j);
void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

void export_census(const Census& c, const std::string& path);
Census import_census(const std::string& path);

}  // namespace mmc
