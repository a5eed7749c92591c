#pragma once

#include <string>

#include <json.hpp>

#include "twohol/gerbe.hpp"
#include "twohol/group_core.hpp"
#include "twohol/holonomy.hpp"
#include "twohol/ribbon.hpp"
#include "twohol/wilson.hpp"

namespace twohol {

// Serialization for every artifact the CLI reads or writes.  All *_from_json
// parsers throw Error("json_io", "schema", ...) on malformed input; every
// to_json/from_json pair round-trips to a structurally equal value.

nlohmann::json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CrossedModule& cm);
CrossedModule crossed_module_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TwoComplex& c);
TwoComplex complex_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundaryGraph& b);
BoundaryGraph graph_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Ribbon& r);
Ribbon ribbon_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Decoration& d);
Decoration decoration_from_json(const nlohmann::json& j);

// {"src_edges":k,"tgt_edges":m,"entries":[[i,j,[p,q]],...]}, plus "phase"
// when the gerbe phase is nonzero.
nlohmann::json to_json(const WilsonState& w);
WilsonState wilson_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Amplitude& a);
Amplitude amplitude_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GerbeDatum& g);
GerbeDatum gerbe_from_json(const nlohmann::json& j);

nlohmann::json violations_to_json(const std::vector<Violation>& vs);

// Partial edge pinning {"fixed":[[edge,g],...]} used by --fix-boundary.
nlohmann::json fixed_to_json(const std::map<int, int>& fixed);
std::map<int, int> fixed_from_json(const nlohmann::json& j);

// Aligned text rendering of a state table (the --format table output).
std::string wilson_table_text(const WilsonState& w);

}  // namespace twohol
