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
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "quac/common/bits.hpp"
#include "quac/dram/device.hpp"

namespace quac::engine {

enum class CommandKind { kAct, kPre, kWriteRow, kReadBlock, kCopyRow };

const char* to_string(CommandKind kind);

struct Command {
  CommandKind kind = CommandKind::kAct;
  std::uint32_t bank_group = 0;
  std::uint32_t bank = 0;
  std::uint32_t row = 0;      // ACT target, WRITE_ROW target, COPY_ROW source
  std::uint32_t dst_row = 0;  // COPY_ROW destination
  std::uint32_t block = 0;    // READ_BLOCK cache-block index
  std::uint8_t fill = 0;      // WRITE_ROW fill value
  bool force = false;         // allow WRITE_ROW / COPY_ROW onto reserved rows
  double issue_time = 0.0;

  static Command act(std::uint32_t bg, std::uint32_t bank, std::uint32_t row, double t);
  static Command pre(std::uint32_t bg, std::uint32_t bank, double t);
  static Command write_row(std::uint32_t bg, std::uint32_t bank, std::uint32_t row, std::uint8_t fill, double t);
  static Command read_block(std::uint32_t bg, std::uint32_t bank, std::uint32_t block, double t);
  static Command copy_row(std::uint32_t bg, std::uint32_t bank, std::uint32_t src, std::uint32_t dst, double t);
};

struct CommandOutcome {
  std::size_t index = 0;
  std::vector<std::uint32_t> active_rows;
};

using RowKey = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;  // bank group, bank, row

struct TraceResult {
  std::vector<BitVector> payloads;
  std::vector<CommandOutcome> outcomes;
  double bus_busy_ns = 0.0;
  std::map<RowKey, std::vector<float>> final_charges;  // every row the trace wrote
};

// Command-bus plus data-bus occupancy of one command.
double command_busy_ns(const Command& c, const dram::TimingParams& t, const dram::DramGeometry& g);

// Applies commands to one bank. Multi-row activations sense through the physical model;
// a single open row reads back its stored data.
class BankEngine {
 public:
  BankEngine(dram::Device& device, std::uint32_t bank_group, std::uint32_t bank,
             std::uint64_t experiment_seed = 0);

  std::vector<std::uint32_t> act(std::uint32_t row, double t);
  std::vector<std::uint32_t> pre(double t);
  void write_row(std::uint32_t row, std::uint8_t fill, double t, bool force = false);
  void write_row_bits(std::uint32_t row, std::span<const std::uint8_t> bits, double t, bool force = false);
  BitVector read_block(std::uint32_t block, double t);
  void copy_row(std::uint32_t src, std::uint32_t dst, double t, bool force = false);

  // Seed for the next multi-row sensing event; afterwards seeds derive from the event counter.
  void set_next_experiment_seed(std::uint64_t seed) { next_seed_ = seed; }
  const BitVector& row_buffer() const { return bank_.row_buffer; }
  dram::BankState& state() { return bank_; }

 private:
  void check_order(double t);
  bool close_if_idle(double t);
  void require_closed(double t, const char* what);
  void require_writable(std::uint32_t row, bool force) const;
  std::uint32_t check_row(std::uint32_t row) const;
  void sense(const std::vector<std::uint32_t>& rows);
  std::vector<float>& row_cells(std::uint32_t row);

  dram::Device& device_;
  const dram::DeviceModel& model_;
  dram::BankState& bank_;
  std::uint32_t bank_group_;
  std::uint32_t bank_index_;
  std::uint64_t seed_;
  std::optional<std::uint64_t> next_seed_;
};

TraceResult execute_trace(dram::Device& device, std::span<const Command> commands,
                          std::uint64_t experiment_seed = 0);

inline constexpr double kDefaultT1 = 2.5;
inline constexpr double kDefaultT2 = 2.5;

// WRITE pattern, ACT(Row_0), PRE after t1, ACT(Row_3) after t2, sense, restore, legal PRE.
BitVector run_quac(dram::Device& device, const dram::SegmentAddress& segment,
                   const dram::DataPattern& pattern, double t1, double t2,
                   std::uint64_t experiment_seed);

// Exact in-subarray row copy issued at the bank's next free time.
void copy_row(dram::Device& device, std::uint32_t bank_group, std::uint32_t bank, std::uint32_t src,
              std::uint32_t dst, bool force = false);

// Nominal-timing read of a whole row through ACT / READ_BLOCK x N / PRE.
BitVector read_row(dram::Device& device, std::uint32_t bank_group, std::uint32_t bank, std::uint32_t row);

}  // namespace quac::engine
