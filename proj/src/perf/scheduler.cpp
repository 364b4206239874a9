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

#include "quac/perf/scheduler.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "quac/common/error.hpp"

namespace quac::perf {
namespace {

constexpr double kNever = -1e18;
constexpr double kEps = 1e-9;

struct BankTimes {
  double last_act = kNever;
  double last_pre = kNever;
  double last_read = kNever;
  double last_write_end = kNever;
  double prev = kNever;
  bool open = false;
};

struct ChannelState {
  double cmd_free = 0.0;
  double last_act_any = kNever;
  std::vector<double> last_act_bg;
  std::array<double, 4> act_window{kNever, kNever, kNever, kNever};  // oldest first
  double last_col_any = kNever;
  std::vector<double> last_col_bg;
  double data_free = 0.0;
  std::vector<BankTimes> banks;
};

double requirement(const ChannelState& s, const BankProgram& prog, std::size_t p, const Op& op,
                   const dram::TimingParams& t) {
  double need = s.cmd_free;
  const BankTimes& b = s.banks[p];
  if (op.fixed_offset < 0.0) {
    if (op.min_gap >= 0.0) {
      need = std::max(need, b.prev + op.min_gap);
    } else {
      switch (op.kind) {
        case OpKind::kAct:
          need = std::max(need, b.last_pre + t.tRP);
          break;
        case OpKind::kPre:
          need = std::max({need, b.last_act + t.tRAS, b.last_read + t.tRTP, b.last_write_end + t.tWR});
          break;
        case OpKind::kRead:
        case OpKind::kWrite:
          need = std::max(need, b.last_act + t.tRCD);
          break;
        case OpKind::kBarrier:
          break;
      }
    }
  }
  switch (op.kind) {
    case OpKind::kAct:
      need = std::max({need, s.last_act_any + t.tRRD_S, s.last_act_bg[prog.bank_group] + t.tRRD_L,
                       s.act_window[0] + t.tFAW});
      break;
    case OpKind::kRead:
    case OpKind::kWrite: {
      const double lead = op.kind == OpKind::kRead ? t.CL : t.CWL;
      need = std::max({need, s.last_col_any + t.ccd_s(), s.last_col_bg[prog.bank_group] + t.ccd_l(),
                       s.data_free - lead});
      break;
    }
    case OpKind::kPre:
    case OpKind::kBarrier:
      break;
  }
  return need;
}

double apply(ChannelState& s, const BankProgram& prog, std::size_t p, const Op& op, double time,
             const dram::TimingParams& t) {
  BankTimes& b = s.banks[p];
  s.cmd_free = time + t.slot();
  b.prev = time;
  double data_end = 0.0;
  switch (op.kind) {
    case OpKind::kAct:
      b.last_act = time;
      b.open = true;
      s.last_act_any = time;
      s.last_act_bg[prog.bank_group] = time;
      std::rotate(s.act_window.begin(), s.act_window.begin() + 1, s.act_window.end());
      s.act_window[3] = time;
      break;
    case OpKind::kPre:
      b.last_pre = time;
      b.open = false;
      break;
    case OpKind::kBarrier:
      break;
    case OpKind::kRead:
    case OpKind::kWrite: {
      const bool rd = op.kind == OpKind::kRead;
      data_end = time + (rd ? t.CL : t.CWL) + t.burst_ns();
      s.data_free = data_end;
      s.last_col_any = time;
      s.last_col_bg[prog.bank_group] = time;
      if (rd) {
        b.last_read = time;
      } else {
        b.last_write_end = data_end;
      }
      break;
    }
  }
  return data_end;
}

std::size_t unit_end(const BankProgram& prog, std::size_t i) {
  std::size_t j = i + 1;
  while (j < prog.ops.size() && prog.ops[j].fixed_offset >= 0.0) ++j;
  return j;
}

// Earliest start for ops [i, j) of program p, placed at their fixed offsets.
double earliest(const ChannelState& state, const std::vector<BankProgram>& programs, std::size_t p,
                std::size_t i, std::size_t j, const dram::TimingParams& t) {
  const BankProgram& prog = programs[p];
  double start = requirement(state, prog, p, prog.ops[i], t);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ChannelState s = state;
    double when = start;
    bool ok = true;
    for (std::size_t k = i; k < j; ++k) {
      if (k > i) when += prog.ops[k].fixed_offset;
      const double need = requirement(s, prog, p, prog.ops[k], t);
      if (need > when + kEps) {
        start += need - when;
        ok = false;
        break;
      }
      apply(s, prog, p, prog.ops[k], when, t);
    }
    if (ok) return start;
  }
  throw ArgumentError("scheduler: no feasible slot for fixed-offset command group");
}

}  // namespace

Timeline run_programs(const std::vector<BankProgram>& programs, const dram::TimingParams& t) {
  t.validate();
  std::uint32_t groups = 1;
  for (const auto& prog : programs) {
    if (!prog.ops.empty() && prog.ops.front().fixed_offset >= 0.0) {
      throw ArgumentError("scheduler: a program cannot start with a fixed-offset command");
    }
    for (std::size_t i = 0; i < prog.ops.size(); ++i) {
      const Op& op = prog.ops[i];
      if (op.kind == OpKind::kBarrier && (op.fixed_offset >= 0.0 || op.min_gap >= 0.0)) {
        throw ArgumentError("scheduler: barriers take no timing offsets");
      }
      if (op.fixed_offset >= 0.0 && i > 0 && prog.ops[i - 1].kind == OpKind::kBarrier) {
        throw ArgumentError("scheduler: a fixed-offset command cannot follow a barrier");
      }
    }
    groups = std::max(groups, prog.bank_group + 1);
  }
  ChannelState state;
  state.last_act_bg.assign(groups, kNever);
  state.last_col_bg.assign(groups, kNever);
  state.banks.assign(programs.size(), BankTimes{});

  std::vector<std::size_t> next(programs.size(), 0);
  Timeline out;
  for (;;) {
    std::size_t best = programs.size();
    double best_time = std::numeric_limits<double>::infinity();
    bool waiting = false;
    for (std::size_t p = 0; p < programs.size(); ++p) {
      if (next[p] >= programs[p].ops.size()) continue;
      if (programs[p].ops[next[p]].kind == OpKind::kBarrier) {
        waiting = true;
        continue;
      }
      const double when = earliest(state, programs, p, next[p], unit_end(programs[p], next[p]), t);
      if (when < best_time - kEps) {
        best_time = when;
        best = p;
      }
    }
    if (best == programs.size()) {
      if (!waiting) break;
      for (std::size_t p = 0; p < programs.size(); ++p) {
        if (next[p] < programs[p].ops.size() && programs[p].ops[next[p]].kind == OpKind::kBarrier) ++next[p];
      }
      continue;
    }
    const BankProgram& prog = programs[best];
    const std::size_t end = unit_end(prog, next[best]);
    double when = best_time;
    for (std::size_t k = next[best]; k < end; ++k) {
      if (k > next[best]) when += prog.ops[k].fixed_offset;
      const double data_end = apply(state, prog, best, prog.ops[k], when, t);
      out.ops.push_back({best, k, prog.ops[k].kind, when, data_end});
      if (prog.ops[k].kind == OpKind::kRead) out.read_data_ends.push_back(data_end);
    }
    next[best] = end;
  }

  double makespan = state.data_free;
  for (const auto& op : out.ops) makespan = std::max(makespan, op.time + t.slot());
  for (const auto& b : state.banks) {
    if (b.last_pre > kNever) makespan = std::max(makespan, b.last_pre + t.tRP);
    if (b.open) makespan = std::max(makespan, b.prev);
  }
  out.makespan = programs.empty() ? 0.0 : makespan;
  std::sort(out.read_data_ends.begin(), out.read_data_ends.end());
  return out;
}

}  // namespace quac::perf
