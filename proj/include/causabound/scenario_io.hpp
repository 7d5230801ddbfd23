// Scenario JSON files and contingency-count CSV files.
//
// Scenario file:
//   {
//     "structure": "mediator_covariate",
//     "covariate_prior": [0.1, 0.9],
//     "exposure": {"S=0": 0.9, "S=1": 0.1},
//     "mediator": {"E=0,S=0": 0.1, ...},
//     "response": {"M=0,S=0": 0.8, ...}
//   }
// Each table maps a condition string to P(variable = 1 | condition). An
// unconditional exposure probability uses the empty key "".
//
// Contingency file: a header naming the variables followed by "count",
// then one row per joint assignment, e.g.
//   E,R,count
//   1,1,30
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "causabound/probability.hpp"

namespace causabound {

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& doc);

// Parses and validates. Throws InputError on malformed text or a violated
// scenario invariant.
Scenario parse_scenario(std::string_view text);

ContingencyTable parse_contingency_csv(std::string_view text);
std::string format_contingency_csv(const ContingencyTable& t);

std::string read_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view bytes);

}  // namespace causabound
