#pragma once

#include <string>

#include <json.hpp>

#include "berezin/rank.hpp"
#include "berezin/recovery.hpp"
#include "berezin/symbol.hpp"

namespace berezin {

using Json = nlohmann::json;

// Complex numbers are [re, im] pairs; series are degree-ordered lists of pairs.

Complex complex_from_json(const Json& j, const std::string& path);
Json complex_to_json(Complex c);
PowerSeries series_from_json(const Json& j, const std::string& path);
/// Trailing exact zeros are dropped, so the zero series is [].
Json series_to_json(const PowerSeries& s);

/// {"harmonic": {"K": [...], "L": [...]}, "atoms": [{"kind", "a", "coeff"}]}.
/// SchemaError names the offending field.
Symbol parse_symbol(const Json& j);
Symbol parse_symbol_text(const std::string& text);
Json serialize_symbol(const Symbol& s);

/// Symbol layout plus "nodes": [{"a", "D", "E", "F"}].
Theorem2Form parse_form(const Json& j);
Json serialize_form(const Theorem2Form& form);

Json grid_to_json(const BidegreeSeries& grid);
BidegreeSeries grid_from_json(const Json& j);
Json rank_report_to_json(const RankReport& r);
Json moment_matrix_to_json(const MomentMatrix& m);
Json node_estimate_to_json(const NodeEstimate& e);
Json rational_to_json(const RationalFunction& r);
Json theoremA_to_json(const TheoremAStructure& s);
Json decomposition_to_json(const Decomposition& d);

}  // namespace berezin
