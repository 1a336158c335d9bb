// SPDX-License-Identifier: Apache-2.0
#pragma once

// Persistent forms of the library's results: UTF-8 JSON and CSV.
// Exact values are rendered in the coefficient grammar (`rat:a/c`,
// `quad:a,b,c,d`); output is byte-deterministic for equal inputs.

#include <string>
#include <string_view>

#include "json.hpp"

#include "drot/census.hpp"
#include "drot/orbits.hpp"

namespace drot {

using Json = nlohmann::ordered_json;

Json to_json(const RotationParams& p);
Json to_json(const LatticeState& s);
Json to_json(const CensusReport& r);
Json to_json(const Bookkeeping& b);
Json to_json(const GrowthCheck& c);
Json to_json(const EquidistStats& e);
Json to_json(const PeriodEnumeration& e);
Json to_json(const OrbitResult& r);

LatticeState state_from_json(const Json& j);
CensusReport census_from_json(const Json& j);
CensusReport census_from_json_text(std::string_view text);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

/// `canonical_x,canonical_y,period,symmetry_class` rows in canonical order.
std::string to_csv(const CensusReport& r);

}  // namespace drot
