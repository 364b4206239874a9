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

#include "quac/common/bits.hpp"
#include "quac/dram/device.hpp"
#include "quac/entropy/sib_plan.hpp"
#include "quac/trng/rng_buffer.hpp"
#include "quac/trng/sha256.hpp"

namespace quac::trng {

struct ReservedBank {
  dram::SegmentAddress segment;
  std::uint32_t zeros_row = 0;
  std::uint32_t ones_row = 0;
};

// One segment plus an all-0s and an all-1s source row per bank, all in one subarray.
struct ReservedLayout {
  std::vector<ReservedBank> banks;
};

// Places the source rows in the first neighbouring segment of the same subarray.
ReservedLayout make_layout(const dram::DeviceModel& model, const entropy::TemperatureBin& bin);

// Writes the source rows and marks all six rows of every bank as reserved.
void install_layout(dram::Device& device, const ReservedLayout& layout);

struct PipelineOptions {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double t1 = 2.5;
  double t2 = 2.5;
  dram::DataPattern pattern = dram::DataPattern::parse("0111");
};

// One pass over every bank: copy-initialize, QUAC, read the planned ranges, hash each range.
// Words come out in layout bank order, ranges in plan order.
std::vector<Word256> generate_iteration(dram::Device& device, const ReservedLayout& layout,
                                        const entropy::SibPlan& plan, double temperature_c,
                                        std::uint64_t iteration_seed, const PipelineOptions& options = {});

class TrngPipeline {
 public:
  TrngPipeline(dram::Device& device, ReservedLayout layout, entropy::SibPlan plan, PipelineOptions options = {});

  std::vector<Word256> generate_iteration(double temperature_c);
  std::uint64_t iterations() const { return iterations_; }
  const entropy::SibPlan& plan() const { return plan_; }
  const ReservedLayout& layout() const { return layout_; }

 private:
  dram::Device& device_;
  ReservedLayout layout_;
  entropy::SibPlan plan_;
  PipelineOptions options_;
  std::uint64_t iterations_ = 0;
};

struct StreamEvent {
  enum class Kind { kRefill, kDequeue } kind = Kind::kRefill;
  std::uint64_t iteration = 0;
  std::size_t fill_bits = 0;
};

struct StreamResult {
  BitVector bits;
  std::vector<StreamEvent> events;
  std::uint64_t refills = 0;
};

// Refills the buffer whenever it falls below its threshold; surplus words of an
// iteration wait for space and are never discarded.
StreamResult stream(TrngPipeline& pipeline, double temperature_c, std::size_t n_bits, RngBuffer& buffer);

}  // namespace quac::trng
