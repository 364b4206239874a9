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
#include <optional>
#include <vector>

#include "quac/dram/types.hpp"

namespace quac::dram {

// Latch-based local wordline decoder of one bank.
struct DecoderState {
  bool A0 = false;
  bool A0b = false;
  bool A1 = false;
  bool A1b = false;
  std::optional<std::uint32_t> active_master_wordline;
  double wordline_enable_time = 0.0;
  std::optional<double> precharge_issue_time;

  bool any_latch() const { return A0 || A0b || A1 || A1b; }
  std::array<bool, 4> select_lines() const {
    return {A0b && A1b, A0 && A1b, A0b && A1, A0 && A1};
  }
  std::vector<std::uint32_t> active_rows() const;
  friend bool operator==(const DecoderState&, const DecoderState&) = default;
};

struct DecoderCommand {
  enum class Kind { kAct, kPre } kind = Kind::kAct;
  std::uint32_t row = 0;

  static DecoderCommand act(std::uint32_t row) { return {Kind::kAct, row}; }
  static DecoderCommand pre() { return {Kind::kPre, 0}; }
};

struct DecoderStep {
  DecoderState state;
  std::vector<std::uint32_t> active_rows;
};

// Throws DomainError for a cross-segment sequence or an ACT to a bank left open without PRE.
DecoderStep decoder_step(const DecoderState& state, const DecoderCommand& command, double now,
                         const TimingParams& timings);

}  // namespace quac::dram
