// Copyright 2026 The quac-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "quac/stats/nist.hpp"

namespace quac::stats {

// Minimum pass proportion (1 - a) - 3 sqrt(a (1 - a) / k).
double population_threshold(std::size_t k, double alpha_pop);

// Chi-square uniformity of p-values over ten equal bins.
double uniformity_p_value(std::span<const double> p_values);

struct PopulationEntry {
  std::string name;
  std::size_t sequences = 0;  // sequences where the test applied
  std::size_t passed = 0;
  double fraction = 0.0;
  bool ok = false;
  double mean_p = 0.0;          // over every p-value
  double mean_p_passing = 0.0;  // over sequences that passed this test
  double uniformity_p = 0.0;
};

struct PopulationVerdict {
  double alpha_pop = 0.005;
  std::size_t k = 0;
  double threshold = 0.0;
  std::vector<PopulationEntry> tests;
  bool passed = false;
};

PopulationVerdict population_pass(std::span<const TestReport> reports, double alpha_pop = 0.005);

nlohmann::json to_json(const PopulationVerdict& v);
// Columns: test, mean_p_value, mean_p_value_passing, pass_fraction, threshold, pass.
void write_table_csv(const PopulationVerdict& v, std::ostream& out);

}  // namespace quac::stats
