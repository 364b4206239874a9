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
#include <utility>
#include <vector>

#include <json.hpp>

#include "quac/dram/types.hpp"
#include "quac/entropy/entropy_map.hpp"

namespace quac::entropy {

inline constexpr double kBitsPerInputBlock = 256.0;

// Inclusive range of cache blocks within one segment.
struct ColumnRange {
  std::uint32_t first_block = 0;
  std::uint32_t last_block = 0;
  double entropy = 0.0;

  std::uint32_t blocks() const { return last_block - first_block + 1; }
  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

struct BankPlan {
  dram::SegmentAddress segment;
  double segment_entropy = 0.0;
  std::vector<ColumnRange> ranges;

  std::uint32_t sib() const { return static_cast<std::uint32_t>(ranges.size()); }
};

struct TemperatureBin {
  double low = 30.0;   // inclusive
  double high = 90.0;  // exclusive, except for the last bin
  std::vector<BankPlan> banks;
};

struct SibPlan {
  std::string device_id;
  std::string pattern;
  std::uint32_t cache_block_bits = 512;
  std::vector<TemperatureBin> bins;

  // Throws DomainError("uncharacterized temperature") when no bin contains `celsius`.
  const TemperatureBin& bin_for(double celsius) const;
  std::uint32_t min_sib() const;
  std::uint32_t max_sib() const;
  // Structural checks: sorted, disjoint ranges each carrying >= 256 bits.
  void validate() const;
};

struct BinSpec {
  double low = 30.0;
  double high = 90.0;
};

std::vector<BinSpec> default_bins(double low = 30.0, double high = 90.0, std::uint32_t count = 10);

// Greedy left-to-right cut of one segment's cache blocks into ranges of >= 256 bits.
BankPlan cut_segment(const SegmentEntropy& segment);

// One map per bin; for every bank present in a map the highest-entropy segment is cut.
SibPlan build_sib_plan(const std::vector<std::pair<BinSpec, EntropyMap>>& per_bin);

// Re-sums every range of `bin` against `map` and throws if any falls below 256 bits.
void verify_bin(const TemperatureBin& bin, const EntropyMap& map);

nlohmann::json to_json(const SibPlan& p);
SibPlan sib_plan_from_json(const nlohmann::json& j);

}  // namespace quac::entropy
