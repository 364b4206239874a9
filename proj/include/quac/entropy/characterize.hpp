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
#include <vector>

#include "quac/dram/device.hpp"
#include "quac/entropy/entropy_map.hpp"

namespace quac::entropy {

struct CharacterizeOptions {
  std::uint32_t trials = 1000;
  double temperature_c = 50.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool keep_bitlines = false;
};

// Experiment seed of trial `t`; run_quac with this seed reproduces that trial exactly.
std::uint64_t trial_seed(std::uint64_t base, std::uint32_t t);

// Entropy of every bitline over repeated QUAC trials. Equivalent to calling run_quac
// trials times per segment with trial_seed(seed, t) and counting ones per bitline,
// evaluated bitline-major without touching device state.
EntropyMap characterize(const dram::DeviceModel& model, const dram::DataPattern& pattern,
                        const std::vector<dram::SegmentAddress>& segments, const CharacterizeOptions& options);

// Per-bitline ones counts of one segment; the building block of characterize.
std::vector<std::uint32_t> ones_counts(const dram::DeviceModel& model, const dram::DataPattern& pattern,
                                       const dram::SegmentAddress& segment, const CharacterizeOptions& options);

// Consecutive segments [first, first + count) of one bank.
std::vector<dram::SegmentAddress> bank_segments(const dram::DeviceModel& model, std::uint32_t bank_group,
                                                std::uint32_t bank, std::uint32_t first, std::uint32_t count);

}  // namespace quac::entropy
