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

#include <array>
#include <cstdint>

namespace quac::dram {

// Effective contribution weights. `first` is the index (0..3) of the row activated first.
struct ShareWeights {
  double first_row = 3.0;
  double later_row = 1.0;
  std::uint32_t first = 0;
};

// Signed bitline deviation from the precharge level after charge sharing among the
// segment's cells. The segment multiplier scales both the charge term and the
// sense-amplifier offset, so it acts as the segment's overall sensing gain.
// Closed rows are passed as 0.5 and contribute nothing.
double charge_share_deviation(const std::array<double, 4>& cells, const ShareWeights& weights,
                              double multiplier, double sa_offset) noexcept;

// Probability that the sense amplifier resolves to 1.
double p_one(double deviation, double thermal_noise_sigma, double temperature_factor) noexcept;

inline constexpr std::uint64_t kThresholdOne = std::uint64_t{1} << 53;

// Integer threshold on a 53-bit draw: P(1) == threshold / 2^53. Symmetric around 2^52.
std::uint64_t sense_threshold(double deviation, double thermal_noise_sigma,
                              double temperature_factor) noexcept;

inline int sample_with_threshold(std::uint64_t threshold, std::uint64_t draw) noexcept {
  return (draw >> 11) < threshold ? 1 : 0;
}

int sample_sense_amp(double deviation, double thermal_noise_sigma, double temperature_factor,
                     std::uint64_t draw) noexcept;

}  // namespace quac::dram
