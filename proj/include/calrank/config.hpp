#pragma once

// Flat key=value experiment files with [section] headers:
//
//   [scenario]  setting, calibration, n, m, value_lo, value_hi, estimators,
//               losses, gammas, trials, inner_samples, seed, threads,
//               multi_pair
//   [weight]    kind = ratio | logistic | table; gamma; inputs; outputs
//   [noise]     kind = none | gaussian | uniform; sigma; half_width
//
// Lists are comma separated. Unknown sections or keys are rejected.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "calrank/harness.hpp"

namespace calrank {

void apply_config(std::istream& in, ScenarioConfig& cfg);
void apply_config_file(const std::string& path, ScenarioConfig& cfg);

std::vector<std::string> split_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

}  // namespace calrank
