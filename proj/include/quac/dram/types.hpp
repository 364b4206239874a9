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
#include <string>
#include <string_view>
#include <vector>

namespace quac::dram {

inline constexpr std::uint32_t kRowsPerSegment = 4;

struct DramGeometry {
  std::uint32_t bank_groups = 4;
  std::uint32_t banks_per_group = 4;
  std::uint32_t subarrays_per_bank = 64;
  std::uint32_t segments_per_bank = 8192;
  std::uint32_t rows_per_segment = kRowsPerSegment;
  std::uint32_t rows_per_bank = 32768;
  std::uint32_t bitlines_per_row = 65536;
  std::uint32_t cache_block_bits = 512;

  void validate() const;
  std::uint32_t banks() const { return bank_groups * banks_per_group; }
  std::uint32_t blocks_per_row() const { return bitlines_per_row / cache_block_bits; }
  std::uint32_t rows_per_subarray() const { return rows_per_bank / subarrays_per_bank; }
  std::uint32_t subarray_of(std::uint32_t row) const { return row / rows_per_subarray(); }
};

// Slack for comparing issue-time differences against timing parameters, in ns.
inline constexpr double kTimeEpsilon = 1e-6;
inline bool elapsed(double since, double duration) { return since >= duration - kTimeEpsilon; }

// Durations in ns. Everything beyond the core set drives the performance scheduler.
struct TimingParams {
  double tRAS = 32.0;
  double tRP = 13.32;
  double tRCD = 13.32;
  double tRRD_S = 3.3;
  double tRRD_L = 4.90;
  double CL = 13.32;
  double transfer_rate = 2400.0;  // MT/s
  std::uint32_t burst_length = 8;
  double command_slot = 0.0;  // 0 selects one command clock

  double CWL = 10.0;
  double tWR = 15.0;
  double tRTP = 7.5;
  double tCCD_L = 5.0;
  double tFAW = 21.0;

  void validate() const;
  double tck() const { return 2000.0 / transfer_rate; }
  double slot() const { return command_slot > 0.0 ? command_slot : tck(); }
  double burst_ns() const { return burst_length * 1000.0 / transfer_rate; }
  double ccd_s() const { return 4.0 * tck(); }
  double ccd_l() const;
  TimingParams at_rate(double mts) const;
};

struct SegmentAddress {
  std::uint32_t bank_group = 0;
  std::uint32_t bank = 0;
  std::uint32_t segment_index = 0;

  std::uint32_t base_row() const { return segment_index * kRowsPerSegment; }
  std::uint32_t row(std::uint32_t i) const { return base_row() + i; }
  friend bool operator==(const SegmentAddress&, const SegmentAddress&) = default;
  friend auto operator<=>(const SegmentAddress&, const SegmentAddress&) = default;
};

SegmentAddress segment_of_row(std::uint32_t bank_group, std::uint32_t bank, std::uint32_t row);

class DataPattern {
 public:
  DataPattern() = default;
  explicit DataPattern(std::array<std::uint8_t, 4> fills);
  static DataPattern parse(std::string_view text);
  static std::vector<DataPattern> all();

  std::uint8_t fill(std::uint32_t row) const { return fills_[row]; }
  const std::array<std::uint8_t, 4>& fills() const { return fills_; }
  std::string str() const;
  friend bool operator==(const DataPattern&, const DataPattern&) = default;

 private:
  std::array<std::uint8_t, 4> fills_{0, 1, 1, 1};
};

struct VariationProfile {
  std::uint64_t master_seed = 1;
  double sa_offset_sigma = 0.6327;
  double thermal_noise_sigma = 0.01424;
  double first_row_weight = 3.0;  // w0
  double later_row_weight = 1.0;  // w
  double segment_weight_jitter_sigma = 0.03;
  double spatial_wave_amplitude = 0.1385;
  double spatial_wave_period = 512.0;  // segments
  double temp_coefficient_per_chip = 0.006;  // per degree C, sign drawn per chip
  double trend_sign_fraction = 24.0 / 40.0;
  double reference_temperature = 50.0;
  std::uint32_t chips = 8;
  // Offset sigma scales with (1 + curvature * (x - peak)^2), x the relative column position.
  double column_profile_curvature = 1.0;
  double column_profile_peak = 0.45;

  void validate() const;
};

}  // namespace quac::dram
