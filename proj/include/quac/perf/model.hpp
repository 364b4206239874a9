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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quac/dram/types.hpp"
#include "quac/perf/scheduler.hpp"

namespace quac::perf {

enum class Mode {
  kOneBank,
  kBgp,
  kRcBgp,
  kDrangeBasic,
  kDrangeEnhanced,
  kTalukderBasic,
  kTalukderEnhanced,
};

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text);
bool is_baseline(Mode mode);
std::vector<Mode> quac_modes();
std::vector<Mode> baseline_modes();

struct HashParams {
  double latency_cycles = 65.0;
  double clock_ghz = 5.15;
  double throughput_gbps = 19.7;

  double latency_ns() const { return latency_cycles / clock_ghz; }
  void validate() const;
};

// Constants that the scheduler cannot derive from DDR4 timings alone.
struct ModelParams {
  std::uint32_t channels = 4;
  std::uint32_t blocks_per_row = 128;
  std::uint32_t parallel_banks = 4;  // one per bank group
  double t1 = 2.5;
  double t2 = 2.5;
  double copy_restore_ns = 17.0;  // second ACT of an in-DRAM copy to its closing PRE

  double drange_trcd_ns = 6.0;
  double drange_pre_gap_ns = 0.0;  // 0 selects one command slot
  double drange_basic_bits_per_read = 4.0;
  double drange_enhanced_block_entropy = 46.55;  // 256-bit outputs take ceil(256 / this) reads
  std::uint32_t drange_cycles = 8;  // accesses per bank per scheduled window

  double talukder_trp_ns = 2.5;
  double talukder_basic_row_cells = 130.6;
  std::uint32_t talukder_basic_rows_per_output = 3;
  double talukder_enhanced_row_entropy = 1023.64;  // floor(this / 256) outputs per row
  std::uint32_t talukder_basic_first_word_reads = 36;
  std::uint32_t talukder_enhanced_first_word_reads = 22;

  void validate() const;
};

struct ScheduleReport {
  Mode mode = Mode::kRcBgp;
  double transfer_rate = 0.0;
  double iteration_ns = 0.0;  // L
  std::uint32_t sib = 0;      // QUAC modes only
  std::uint32_t banks = 0;
  double bits_per_iteration = 0.0;
  double throughput_gbps = 0.0;  // per channel
  std::uint32_t channels = 1;
  double latency_ns = 0.0;  // one 256-bit number, hash included where hashing is used
  bool hash_bottleneck = false;

  double system_throughput_gbps() const { return throughput_gbps * channels; }
};

// Per-iteration command programs, one per bank, for a QUAC mode.
std::vector<BankProgram> quac_programs(Mode mode, std::uint32_t sib, const dram::TimingParams& t,
                                       const ModelParams& params);

ScheduleReport schedule(Mode mode, const dram::TimingParams& t, std::uint32_t sib,
                        const HashParams& hash = {}, const ModelParams& params = {});
ScheduleReport baseline(Mode mode, const dram::TimingParams& t, const HashParams& hash = {},
                        const ModelParams& params = {});
// Dispatches to schedule() or baseline().
ScheduleReport evaluate(Mode mode, const dram::TimingParams& t, std::uint32_t sib,
                        const HashParams& hash = {}, const ModelParams& params = {});

struct Projection {
  Mode reference = Mode::kRcBgp;
  std::vector<Mode> modes;
  std::vector<double> rates;
  std::vector<std::vector<ScheduleReport>> reports;  // [rate][mode]

  const ScheduleReport& at(double rate, Mode mode) const;
  // reference throughput over mode throughput at one rate
  double ratio(double rate, Mode mode) const;
};

Projection project(const std::vector<Mode>& modes, const std::vector<double>& rates,
                   const dram::TimingParams& base, std::uint32_t sib, const HashParams& hash = {},
                   const ModelParams& params = {}, Mode reference = Mode::kRcBgp);

double idle_scaled_throughput(double full_gbps, double idle_fraction, std::uint32_t channels = 1);

struct StorageParams {
  std::uint32_t row_addr_bits = 18;
  std::uint32_t col_addr_bits = 10;
  std::uint32_t temp_ranges = 10;
  std::uint32_t sib_max = 11;
};
std::uint64_t storage_bits(std::uint32_t row_addr_bits, std::uint32_t col_addr_bits,
                           std::uint32_t temp_ranges, std::uint32_t sib_max);
inline std::uint64_t storage_bits(const StorageParams& p) {
  return storage_bits(p.row_addr_bits, p.col_addr_bits, p.temp_ranges, p.sib_max);
}

nlohmann::json to_json(const ScheduleReport& r);
nlohmann::json to_json(const Projection& p);
nlohmann::json to_json(const ModelParams& p);
nlohmann::json to_json(const HashParams& p);
void apply_json(const nlohmann::json& j, ModelParams& p);
void apply_json(const nlohmann::json& j, HashParams& p);

void write_reports_csv(std::ostream& os, const std::vector<ScheduleReport>& reports);
void write_projection_csv(std::ostream& os, const Projection& p);

}  // namespace quac::perf
