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

#include "quac/dram/decoder.hpp"

#include <string>

#include "quac/common/error.hpp"

namespace quac::dram {

std::vector<std::uint32_t> DecoderState::active_rows() const {
  std::vector<std::uint32_t> rows;
  if (!active_master_wordline) return rows;
  const auto s = select_lines();
  for (std::uint32_t i = 0; i < 4; ++i)
    if (s[i]) rows.push_back(*active_master_wordline * kRowsPerSegment + i);
  return rows;
}

namespace {

void clear(DecoderState& s) {
  s.A0 = s.A0b = s.A1 = s.A1b = false;
  s.active_master_wordline.reset();
}

void latch_row(DecoderState& s, std::uint32_t row) {
  if (row & 1u) s.A0 = true; else s.A0b = true;
  if (row & 2u) s.A1 = true; else s.A1b = true;
}

}  // namespace

DecoderStep decoder_step(const DecoderState& state, const DecoderCommand& command, double now,
                         const TimingParams& timings) {
  DecoderState next = state;
  if (command.kind == DecoderCommand::Kind::kPre) {
    if (next.any_latch()) {
      if (elapsed(now - next.wordline_enable_time, timings.tRAS)) clear(next);
    }
    next.precharge_issue_time = now;
    return {next, next.active_rows()};
  }

  const std::uint32_t mwl = command.row / kRowsPerSegment;
  if (next.any_latch()) {
    if (!next.precharge_issue_time)
      throw DomainError("ACT to row " + std::to_string(command.row) +
                        " issued while the bank is open and no PRE was issued");
    if (elapsed(now - *next.precharge_issue_time, timings.tRP)) {
      // The pending precharge completed before this ACT arrived.
      clear(next);
    } else if (*next.active_master_wordline != mwl) {
      throw DomainError("cross-segment sequence undefined: ACT to row " + std::to_string(command.row) +
                        " while latches of master wordline " +
                        std::to_string(*next.active_master_wordline) + " are set");
    }
  }
  latch_row(next, command.row);
  next.active_master_wordline = mwl;
  next.wordline_enable_time = now;
  next.precharge_issue_time.reset();
  return {next, next.active_rows()};
}

}  // namespace quac::dram
