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

#include "quac/dram/types.hpp"

#include <algorithm>
#include <cmath>

#include "quac/common/error.hpp"

namespace quac::dram {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(field, what);
}

void require_positive(double v, const char* field) {
  require(std::isfinite(v) && v > 0.0, field, "must be > 0");
}

}  // namespace

void DramGeometry::validate() const {
  require(bank_groups > 0, "bank_groups", "must be > 0");
  require(banks_per_group > 0, "banks_per_group", "must be > 0");
  require(subarrays_per_bank > 0, "subarrays_per_bank", "must be > 0");
  require(segments_per_bank > 0, "segments_per_bank", "must be > 0");
  require(rows_per_segment == kRowsPerSegment, "rows_per_segment", "must be exactly 4");
  require(rows_per_bank % subarrays_per_bank == 0, "rows_per_bank",
          "must be divisible by subarrays_per_bank");
  require(rows_per_subarray() % kRowsPerSegment == 0, "subarrays_per_bank",
          "rows per subarray must be a multiple of 4");
  require(static_cast<std::uint64_t>(segments_per_bank) * kRowsPerSegment <= rows_per_bank,
          "segments_per_bank", "segments_per_bank * 4 exceeds rows_per_bank");
  require(cache_block_bits > 0 && cache_block_bits % 8 == 0, "cache_block_bits",
          "must be a positive multiple of 8");
  require(bitlines_per_row > 0 && bitlines_per_row % cache_block_bits == 0, "bitlines_per_row",
          "must be divisible by cache_block_bits");
}

void TimingParams::validate() const {
  require_positive(tRAS, "tRAS");
  require_positive(tRP, "tRP");
  require_positive(tRCD, "tRCD");
  require_positive(tRRD_S, "tRRD_S");
  require_positive(tRRD_L, "tRRD_L");
  require_positive(CL, "CL");
  require_positive(transfer_rate, "transfer_rate");
  require(burst_length > 0, "burst_length", "must be > 0");
  require(std::isfinite(command_slot) && command_slot >= 0.0, "command_slot", "must be >= 0");
  require_positive(CWL, "CWL");
  require_positive(tWR, "tWR");
  require_positive(tRTP, "tRTP");
  require_positive(tCCD_L, "tCCD_L");
  require_positive(tFAW, "tFAW");
  require(tRRD_S <= tRRD_L, "tRRD_S", "must not exceed tRRD_L");
}

double TimingParams::ccd_l() const { return std::max(tCCD_L, ccd_s()); }

TimingParams TimingParams::at_rate(double mts) const {
  TimingParams t = *this;
  t.transfer_rate = mts;
  return t;
}

SegmentAddress segment_of_row(std::uint32_t bank_group, std::uint32_t bank, std::uint32_t row) {
  return SegmentAddress{bank_group, bank, row / kRowsPerSegment};
}

DataPattern::DataPattern(std::array<std::uint8_t, 4> fills) : fills_(fills) {
  for (auto f : fills_)
    if (f > 1) throw ConfigError("pattern", "symbols must be 0 or 1");
}

DataPattern DataPattern::parse(std::string_view text) {
  if (text.size() != 4) throw ConfigError("pattern", "expected exactly 4 symbols, got '" + std::string(text) + "'");
  std::array<std::uint8_t, 4> f{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (text[i] != '0' && text[i] != '1')
      throw ConfigError("pattern", "symbols must be '0' or '1', got '" + std::string(text) + "'");
    f[i] = static_cast<std::uint8_t>(text[i] - '0');
  }
  return DataPattern(f);
}

std::vector<DataPattern> DataPattern::all() {
  std::vector<DataPattern> out;
  for (unsigned v = 0; v < 16; ++v)
    out.emplace_back(std::array<std::uint8_t, 4>{static_cast<std::uint8_t>((v >> 3) & 1),
                                                 static_cast<std::uint8_t>((v >> 2) & 1),
                                                 static_cast<std::uint8_t>((v >> 1) & 1),
                                                 static_cast<std::uint8_t>(v & 1)});
  return out;
}

std::string DataPattern::str() const {
  std::string s(4, '0');
  for (std::size_t i = 0; i < 4; ++i) s[i] = static_cast<char>('0' + fills_[i]);
  return s;
}

void VariationProfile::validate() const {
  require(sa_offset_sigma >= 0.0, "sa_offset_sigma", "must be >= 0");
  require(thermal_noise_sigma >= 0.0, "thermal_noise_sigma", "must be >= 0");
  require(segment_weight_jitter_sigma >= 0.0, "segment_weight_jitter_sigma", "must be >= 0");
  require(first_row_weight > 0.0, "first_row_weight", "must be > 0");
  require(later_row_weight > 0.0, "later_row_weight", "must be > 0");
  require(trend_sign_fraction >= 0.0 && trend_sign_fraction <= 1.0, "trend_sign_fraction",
          "must lie in [0, 1]");
  require(spatial_wave_period > 0.0, "spatial_wave_period", "must be > 0");
  require(chips > 0, "chips", "must be > 0");
  require(column_profile_curvature >= 0.0, "column_profile_curvature", "must be >= 0");
  require(std::isfinite(temp_coefficient_per_chip), "temp_coefficient_per_chip", "must be finite");
}

}  // namespace quac::dram
