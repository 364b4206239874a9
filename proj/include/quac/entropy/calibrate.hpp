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

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "quac/dram/config_io.hpp"
#include "quac/dram/device.hpp"

namespace quac::entropy {

// Expected measured entropy E[H(K/n)], K ~ Binomial(n, Phi(z)), tabulated over z.
class EntropyExpectation {
 public:
  explicit EntropyExpectation(std::uint32_t trials, double z_max = 9.0, double dz = 0.01);

  double at(double z) const;
  // Expected entropy of a bitline whose deviation is m * (bracket + o), o ~ N(0, offset_sigma).
  double bitline(double bracket, double multiplier, double offset_sigma, double thermal_sigma,
                 double temperature_factor = 1.0) const;

 private:
  double z_max_;
  double dz_;
  std::vector<double> table_;
};

// Signed charge term of a pattern with Row_0 activated first.
double pattern_bracket(const dram::DataPattern& pattern, double first_row_weight, double later_row_weight);

// Expected segment entropy under the analytic model, sampling `columns` positions.
double expected_segment_entropy(const dram::DeviceModel& model, const dram::DataPattern& pattern,
                                const EntropyExpectation& table, double multiplier, std::uint32_t columns = 16);

struct CalibrationTargets {
  std::string best_pattern = "0111";
  double best_block_entropy = 11.07;
  std::string worst_pattern = "1011";
  double worst_block_entropy = 0.17;
  double max_segment_entropy = 1844.6;
  std::uint32_t trials = 1000;
  std::uint32_t sample_segments = 32;
  std::uint32_t column_samples = 8;
};

CalibrationTargets calibration_targets_from_json(const nlohmann::json& j);

struct CalibrationResult {
  dram::VariationProfile profile;
  double best_block_entropy = 0.0;
  double worst_block_entropy = 0.0;
  double max_segment_entropy = 0.0;
  double mean_segment_entropy = 0.0;
};

// Fits sa_offset_sigma and thermal_noise_sigma to the two pattern targets, then the
// spatial wave amplitude to the max-segment target, against bank (0, 0).
CalibrationResult calibrate(const dram::DeviceConfig& base, const CalibrationTargets& targets);

nlohmann::json to_json(const CalibrationResult& r);

}  // namespace quac::entropy
