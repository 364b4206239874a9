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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "quac/dram/types.hpp"

namespace quac::perf {

// kBarrier issues nothing: a program waits there until every unfinished program has reached one.
enum class OpKind { kAct, kPre, kRead, kWrite, kBarrier };

// A command in a bank program. An op with fixed_offset >= 0 is issued exactly that long
// after the op before it and is scheduled atomically with it. An op with min_gap >= 0
// replaces the bank's own timing checks with "previous op + min_gap"; channel-wide
// constraints (command bus, tRRD, tFAW, tCCD, data bus) still apply.
struct Op {
  OpKind kind = OpKind::kAct;
  double fixed_offset = -1.0;
  double min_gap = -1.0;

  static Op act() { return {OpKind::kAct}; }
  static Op pre() { return {OpKind::kPre}; }
  static Op read() { return {OpKind::kRead}; }
  static Op write() { return {OpKind::kWrite}; }
  static Op barrier() { return {OpKind::kBarrier}; }
  Op at(double offset) const {
    Op o = *this;
    o.fixed_offset = offset;
    return o;
  }
  Op after(double gap) const {
    Op o = *this;
    o.min_gap = gap;
    return o;
  }
};

struct BankProgram {
  std::uint32_t bank_group = 0;
  std::uint32_t bank = 0;
  std::vector<Op> ops;
};

struct IssuedOp {
  std::size_t program = 0;
  std::size_t index = 0;
  OpKind kind = OpKind::kAct;
  double time = 0.0;
  double data_end = 0.0;  // reads and writes only
};

struct Timeline {
  std::vector<IssuedOp> ops;  // in issue order, times non-decreasing
  double makespan = 0.0;      // until every bank is precharged and all data has moved
  std::vector<double> read_data_ends;  // sorted

  std::size_t reads() const { return read_data_ends.size(); }
};

// Greedy list scheduler: repeatedly issues the program head that can go earliest,
// ties broken by program order. All programs start from idle, precharged banks at t = 0.
Timeline run_programs(const std::vector<BankProgram>& programs, const dram::TimingParams& t);

}  // namespace quac::perf
