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
#include <deque>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "quac/common/rng.hpp"
#include "quac/dram/decoder.hpp"
#include "quac/dram/types.hpp"

namespace quac::dram {

// Per-segment quantities drawn once from the keyed parameter streams.
struct SegmentParams {
  SegmentAddress addr;
  double multiplier = 1.0;
  std::uint64_t offset_key = 0;
  std::uint64_t noise_key = 0;
};

// Immutable static description of a device. Per-bitline parameters are pure functions
// of (master_seed, bank_group, bank, segment, bitline) and are never materialized.
class DeviceModel {
 public:
  DeviceModel(DramGeometry geometry, TimingParams timings, VariationProfile variation);

  const DramGeometry& geometry() const { return geometry_; }
  const TimingParams& timings() const { return timings_; }
  const VariationProfile& variation() const { return variation_; }

  void check_segment(const SegmentAddress& addr) const;
  void check_bank(std::uint32_t bank_group, std::uint32_t bank) const;

  SegmentParams segment(const SegmentAddress& addr) const;
  double column_profile(std::uint32_t bitline) const;
  double bitline_offset(const SegmentParams& seg, std::uint32_t bitline) const;
  int chip_sign(std::uint32_t chip) const { return chip_signs_[chip]; }
  std::uint32_t chip_of(std::uint32_t bitline) const { return (bitline / 8) % variation_.chips; }
  double temperature_factor(std::uint32_t bitline, double temperature_c) const;

  std::uint64_t noise_key(const SegmentParams& seg, std::uint32_t bitline) const;
  static std::uint64_t experiment_key(std::uint64_t experiment_seed);
  static std::uint64_t draw(std::uint64_t noise_key, std::uint64_t experiment_key) {
    return rng::mix64(noise_key ^ experiment_key);
  }

  // Sense threshold of one bitline given the four cell charges of its segment.
  std::uint64_t threshold(const SegmentParams& seg, std::uint32_t bitline,
                          const std::array<double, 4>& cells, std::uint32_t first_row,
                          double temperature_c) const;

  // Hex digest of the canonical configuration.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  DramGeometry geometry_;
  TimingParams timings_;
  VariationProfile variation_;
  std::vector<int> chip_signs_;
  std::string fingerprint_;
};

struct SenseCacheEntry {
  SegmentAddress addr;
  double temperature_c = 0.0;
  std::uint32_t first_row = 0;
  std::uint32_t active_mask = 0;
  std::vector<std::uint64_t> noise_keys;
  std::array<std::vector<std::uint64_t>, 16> thresholds;
};

// Mutable state of one bank. Only one worker may touch a bank at a time.
struct BankState {
  DecoderState decoder;
  std::unordered_map<std::uint32_t, std::vector<float>> cells;
  std::vector<std::uint8_t> row_buffer;
  std::optional<std::uint32_t> first_row;
  double now = 0.0;
  std::optional<double> last_issue;
  std::set<std::uint32_t> reserved_rows;
  std::uint64_t sense_events = 0;
  std::deque<SenseCacheEntry> sense_cache;
};

class Device {
 public:
  explicit Device(std::shared_ptr<const DeviceModel> model);

  const DeviceModel& model() const { return *model_; }
  std::shared_ptr<const DeviceModel> model_ptr() const { return model_; }

  BankState& bank(std::uint32_t bank_group, std::uint32_t bank);
  const BankState& bank(std::uint32_t bank_group, std::uint32_t bank) const;

  double temperature() const { return temperature_c_; }
  void set_temperature(double celsius) { temperature_c_ = celsius; }

 private:
  std::shared_ptr<const DeviceModel> model_;
  std::vector<BankState> banks_;
  double temperature_c_;
};

using DeviceState = Device;

Device build_device(const DramGeometry& geometry, const TimingParams& timings,
                    const VariationProfile& variation);

// Charge of one cell; rows never written hold 0.
float cell_charge(const BankState& bank, std::uint32_t row, std::uint32_t bitline);

}  // namespace quac::dram
