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

#include "quac/dram/physics.hpp"

#include <cmath>
#include <numbers>

namespace quac::dram {

double charge_share_deviation(const std::array<double, 4>& cells, const ShareWeights& weights,
                              double multiplier, double sa_offset) noexcept {
  double sum = 0.0;
  for (std::uint32_t i = 0; i < 4; ++i) {
    const double w = i == weights.first ? weights.first_row : weights.later_row;
    sum += w * (cells[i] - 0.5);
  }
  return multiplier * (sum + sa_offset);
}

namespace {

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double z_score(double deviation, double sigma, double factor) noexcept {
  if (sigma <= 0.0) return deviation == 0.0 ? 0.0 : std::copysign(INFINITY, deviation * factor);
  return deviation * factor / sigma;
}

}  // namespace

double p_one(double deviation, double thermal_noise_sigma, double temperature_factor) noexcept {
  return normal_cdf(z_score(deviation, thermal_noise_sigma, temperature_factor));
}

std::uint64_t sense_threshold(double deviation, double thermal_noise_sigma,
                              double temperature_factor) noexcept {
  const double z = z_score(deviation, thermal_noise_sigma, temperature_factor);
  constexpr double scale = static_cast<double>(kThresholdOne);
  if (z >= 0.0)
    return kThresholdOne - static_cast<std::uint64_t>(std::floor(normal_cdf(-z) * scale));
  return static_cast<std::uint64_t>(std::floor(normal_cdf(z) * scale));
}

int sample_sense_amp(double deviation, double thermal_noise_sigma, double temperature_factor,
                     std::uint64_t draw) noexcept {
  return sample_with_threshold(sense_threshold(deviation, thermal_noise_sigma, temperature_factor), draw);
}

}  // namespace quac::dram
