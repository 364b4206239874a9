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
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "quac/dram/types.hpp"

namespace quac::entropy {

// Shannon entropy of a binary source with P(1) = p; 0 log 0 := 0.
double binary_entropy(double p);
double bitline_entropy(std::uint32_t ones_count, std::uint32_t trials);

struct SegmentEntropy {
  dram::SegmentAddress addr;
  std::vector<double> block_entropy;
  double total = 0.0;
  std::vector<float> bitline_entropy;  // empty unless requested at characterization
};

struct EntropyMap {
  std::string device_id;
  std::string pattern;
  double temperature_c = 50.0;
  std::uint32_t trials = 0;
  std::uint32_t cache_block_bits = 512;
  std::uint32_t bitlines_per_row = 65536;
  std::vector<SegmentEntropy> segments;

  double average_block_entropy() const;
  double mean_segment_entropy() const;
  double max_segment_entropy() const;
  // Index of the highest-entropy segment, optionally restricted to one bank.
  std::size_t best_segment() const;
  std::size_t best_segment(std::uint32_t bank_group, std::uint32_t bank) const;
};

nlohmann::json to_json(const EntropyMap& m, bool include_bitlines = false);
EntropyMap entropy_map_from_json(const nlohmann::json& j);

// One row per segment: bank_group,bank,segment,entropy.
void write_segment_csv(const EntropyMap& m, std::ostream& out);

}  // namespace quac::entropy
