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

#include "quac/perf/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "quac/common/error.hpp"
#include "quac/common/json_binder.hpp"

namespace quac::perf {

using nlohmann::json;

namespace {

constexpr double kOutputBits = 256.0;
constexpr std::uint32_t kInitRows = 4;

struct ModeName {
  Mode mode;
  const char* name;
};
constexpr ModeName kModeNames[] = {
    {Mode::kOneBank, "OneBank"},
    {Mode::kBgp, "BGP"},
    {Mode::kRcBgp, "RC+BGP"},
    {Mode::kDrangeBasic, "DRaNGe-Basic"},
    {Mode::kDrangeEnhanced, "DRaNGe-Enhanced"},
    {Mode::kTalukderBasic, "Talukder-Basic"},
    {Mode::kTalukderEnhanced, "Talukder-Enhanced"},
};

void append_copy(std::vector<Op>& ops, const ModelParams& p) {
  ops.push_back(Op::act());
  ops.push_back(Op::pre().at(p.t1));
  ops.push_back(Op::act().at(p.t2));
  ops.push_back(Op::pre().after(p.copy_restore_ns));
}

void append_quac(std::vector<Op>& ops, const ModelParams& p) {
  ops.push_back(Op::act());
  ops.push_back(Op::pre().at(p.t1));
  ops.push_back(Op::act().at(p.t2));
}

void append_write_row(std::vector<Op>& ops, std::uint32_t blocks) {
  ops.push_back(Op::act());
  ops.insert(ops.end(), blocks, Op::write());
  ops.push_back(Op::pre());
}

std::uint32_t blocks_per_range(std::uint32_t sib, const ModelParams& p) {
  if (sib == 0) throw ArgumentError("SIB must be >= 1");
  if (sib > p.blocks_per_row) throw ArgumentError("SIB exceeds the cache blocks in a row");
  return p.blocks_per_row / sib;
}

// Initialization and QUAC core for one bank.
std::vector<Op> quac_prologue(Mode mode, const ModelParams& p) {
  std::vector<Op> ops;
  for (std::uint32_t r = 0; r < kInitRows; ++r) {
    if (mode == Mode::kRcBgp) {
      append_copy(ops, p);
    } else {
      append_write_row(ops, p.blocks_per_row);
    }
  }
  append_quac(ops, p);
  return ops;
}

std::vector<BankProgram> replicate(const std::vector<Op>& ops, std::uint32_t banks) {
  std::vector<BankProgram> programs(banks);
  for (std::uint32_t i = 0; i < banks; ++i) programs[i] = {i, 0, ops};
  return programs;
}

double nth_read(const Timeline& tl, std::uint32_t n) {
  if (n == 0 || n > tl.reads()) throw DomainError("scheduler produced too few reads for the first output");
  return tl.read_data_ends[n - 1];
}

ScheduleReport finish(Mode mode, const dram::TimingParams& t, const HashParams& hash, const ModelParams& p,
                      double makespan, double bits, std::uint32_t banks, bool hashed) {
  ScheduleReport r;
  r.mode = mode;
  r.transfer_rate = t.transfer_rate;
  r.iteration_ns = makespan;
  r.banks = banks;
  r.bits_per_iteration = bits;
  r.throughput_gbps = bits / makespan;
  r.channels = p.channels;
  if (hashed && r.throughput_gbps > hash.throughput_gbps) {
    r.throughput_gbps = hash.throughput_gbps;
    r.hash_bottleneck = true;
  }
  return r;
}

}  // namespace

std::string to_string(Mode mode) {
  for (const auto& m : kModeNames) {
    if (m.mode == mode) return m.name;
  }
  throw ArgumentError("unknown mode");
}

Mode parse_mode(std::string_view text) {
  for (const auto& m : kModeNames) {
    if (text == m.name) return m.mode;
  }
  throw ArgumentError("unknown mode '" + std::string(text) + "'");
}

bool is_baseline(Mode mode) {
  return mode != Mode::kOneBank && mode != Mode::kBgp && mode != Mode::kRcBgp;
}

std::vector<Mode> quac_modes() { return {Mode::kOneBank, Mode::kBgp, Mode::kRcBgp}; }

std::vector<Mode> baseline_modes() {
  return {Mode::kDrangeBasic, Mode::kDrangeEnhanced, Mode::kTalukderBasic, Mode::kTalukderEnhanced};
}

void HashParams::validate() const {
  if (!(latency_cycles >= 0.0)) throw ConfigError("hash.latency_cycles", "must be >= 0");
  if (!(clock_ghz > 0.0)) throw ConfigError("hash.clock_ghz", "must be > 0");
  if (!(throughput_gbps > 0.0)) throw ConfigError("hash.throughput_gbps", "must be > 0");
}

void ModelParams::validate() const {
  auto positive = [](double v, const char* f) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("model.") + f, "must be > 0");
  };
  if (channels == 0) throw ConfigError("model.channels", "must be >= 1");
  if (blocks_per_row == 0) throw ConfigError("model.blocks_per_row", "must be >= 1");
  if (parallel_banks == 0) throw ConfigError("model.parallel_banks", "must be >= 1");
  positive(t1, "t1");
  positive(t2, "t2");
  positive(copy_restore_ns, "copy_restore_ns");
  positive(drange_trcd_ns, "drange_trcd_ns");
  if (!(drange_pre_gap_ns >= 0.0)) throw ConfigError("model.drange_pre_gap_ns", "must be >= 0");
  positive(drange_basic_bits_per_read, "drange_basic_bits_per_read");
  positive(drange_enhanced_block_entropy, "drange_enhanced_block_entropy");
  if (drange_cycles == 0) throw ConfigError("model.drange_cycles", "must be >= 1");
  positive(talukder_trp_ns, "talukder_trp_ns");
  positive(talukder_basic_row_cells, "talukder_basic_row_cells");
  if (talukder_basic_rows_per_output == 0 ||
      talukder_basic_rows_per_output * talukder_basic_row_cells < kOutputBits) {
    throw ConfigError("model.talukder_basic_rows_per_output", "rows must hold 256 random cells");
  }
  if (talukder_enhanced_row_entropy < kOutputBits) {
    throw ConfigError("model.talukder_enhanced_row_entropy", "must be >= 256");
  }
  if (talukder_basic_first_word_reads == 0 || talukder_basic_first_word_reads > blocks_per_row) {
    throw ConfigError("model.talukder_basic_first_word_reads", "must be in [1, blocks_per_row]");
  }
  if (talukder_enhanced_first_word_reads == 0 || talukder_enhanced_first_word_reads > blocks_per_row) {
    throw ConfigError("model.talukder_enhanced_first_word_reads", "must be in [1, blocks_per_row]");
  }
}

std::vector<BankProgram> quac_programs(Mode mode, std::uint32_t sib, const dram::TimingParams&,
                                       const ModelParams& p) {
  if (is_baseline(mode)) throw ArgumentError("quac_programs: " + to_string(mode) + " is a baseline");
  const std::uint32_t reads = sib * blocks_per_range(sib, p);
  std::vector<Op> ops = quac_prologue(mode, p);
  // Every bank is initialized and sensed before the interleaved reads start.
  if (mode != Mode::kOneBank) ops.push_back(Op::barrier());
  ops.insert(ops.end(), reads, Op::read());
  ops.push_back(Op::pre());
  return replicate(ops, mode == Mode::kOneBank ? 1 : p.parallel_banks);
}

ScheduleReport schedule(Mode mode, const dram::TimingParams& t, std::uint32_t sib, const HashParams& hash,
                        const ModelParams& p) {
  t.validate();
  hash.validate();
  p.validate();
  const auto programs = quac_programs(mode, sib, t, p);
  const Timeline tl = run_programs(programs, t);
  const auto banks = static_cast<std::uint32_t>(programs.size());
  ScheduleReport r = finish(mode, t, hash, p, tl.makespan, kOutputBits * sib * banks, banks, true);
  r.sib = sib;

  // First output: one bank alone, up to the last block of its first column range.
  std::vector<Op> first = quac_prologue(mode, p);
  first.insert(first.end(), blocks_per_range(sib, p), Op::read());
  const Timeline ft = run_programs({BankProgram{0, 0, first}}, t);
  r.latency_ns = ft.read_data_ends.back() + hash.latency_ns();
  return r;
}

ScheduleReport baseline(Mode mode, const dram::TimingParams& t, const HashParams& hash, const ModelParams& p) {
  t.validate();
  hash.validate();
  p.validate();
  const std::uint32_t banks = p.parallel_banks;
  switch (mode) {
    case Mode::kDrangeBasic:
    case Mode::kDrangeEnhanced: {
      const bool enhanced = mode == Mode::kDrangeEnhanced;
      const double reads_per_output = enhanced ? std::ceil(kOutputBits / p.drange_enhanced_block_entropy)
                                               : std::ceil(kOutputBits / p.drange_basic_bits_per_read);
      const double bits_per_read = enhanced ? kOutputBits / reads_per_output : p.drange_basic_bits_per_read;
      const auto first_reads = static_cast<std::uint32_t>(std::ceil(reads_per_output / p.channels));
      const std::uint32_t cycles = std::max(p.drange_cycles, (first_reads + banks - 1) / banks);
      const double pre_gap = p.drange_pre_gap_ns > 0.0 ? p.drange_pre_gap_ns : t.slot();
      auto window = [&](std::uint32_t n) {
        std::vector<Op> ops;
        for (std::uint32_t c = 0; c < n; ++c) {
          ops.push_back(Op::act());
          ops.push_back(Op::read().after(p.drange_trcd_ns));
          ops.push_back(Op::pre().after(pre_gap));
          append_write_row(ops, 1);
        }
        return run_programs(replicate(ops, banks), t);
      };
      // Steady state: the extra time taken by a window twice as long.
      const Timeline once = window(cycles);
      const Timeline twice = window(2 * cycles);
      const double period = twice.makespan - once.makespan;
      ScheduleReport r = finish(mode, t, hash, p, period, bits_per_read * cycles * banks, banks, enhanced);
      r.latency_ns = nth_read(once, first_reads) + (enhanced ? hash.latency_ns() : 0.0);
      return r;
    }
    case Mode::kTalukderBasic:
    case Mode::kTalukderEnhanced: {
      const bool enhanced = mode == Mode::kTalukderEnhanced;
      const double bits_per_row = enhanced ? kOutputBits * std::floor(p.talukder_enhanced_row_entropy / kOutputBits)
                                           : kOutputBits / p.talukder_basic_rows_per_output;
      std::vector<Op> ops;
      append_copy(ops, p);
      ops.push_back(Op::act());
      ops.push_back(Op::pre());
      ops.push_back(Op::act().after(p.talukder_trp_ns));
      ops.push_back(Op::barrier());
      ops.insert(ops.end(), p.blocks_per_row, Op::read());
      ops.push_back(Op::pre());
      const Timeline tl = run_programs(replicate(ops, banks), t);
      ScheduleReport r = finish(mode, t, hash, p, tl.makespan, bits_per_row * banks, banks, true);
      r.latency_ns = nth_read(tl, enhanced ? p.talukder_enhanced_first_word_reads : p.talukder_basic_first_word_reads) +
                     hash.latency_ns();
      return r;
    }
    default:
      throw ArgumentError("baseline: " + to_string(mode) + " is not a baseline");
  }
}

ScheduleReport evaluate(Mode mode, const dram::TimingParams& t, std::uint32_t sib, const HashParams& hash,
                        const ModelParams& params) {
  return is_baseline(mode) ? baseline(mode, t, hash, params) : schedule(mode, t, sib, hash, params);
}

const ScheduleReport& Projection::at(double rate, Mode mode) const {
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] != rate) continue;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      if (modes[m] == mode) return reports[i][m];
    }
  }
  throw ArgumentError("projection has no entry for " + to_string(mode) + " at the requested rate");
}

double Projection::ratio(double rate, Mode mode) const {
  return at(rate, reference).system_throughput_gbps() / at(rate, mode).system_throughput_gbps();
}

Projection project(const std::vector<Mode>& modes, const std::vector<double>& rates,
                   const dram::TimingParams& base, std::uint32_t sib, const HashParams& hash,
                   const ModelParams& params, Mode reference) {
  Projection out;
  out.reference = reference;
  out.modes = modes;
  if (std::find(modes.begin(), modes.end(), reference) == modes.end()) out.modes.insert(out.modes.begin(), reference);
  out.rates = rates;
  for (double rate : rates) {
    if (!(rate > 0.0)) throw ArgumentError("transfer rates must be > 0");
    const auto t = base.at_rate(rate);
    std::vector<ScheduleReport> row;
    for (Mode m : out.modes) row.push_back(evaluate(m, t, sib, hash, params));
    out.reports.push_back(std::move(row));
  }
  return out;
}

double idle_scaled_throughput(double full_gbps, double idle_fraction, std::uint32_t channels) {
  if (!(idle_fraction >= 0.0 && idle_fraction <= 1.0)) throw ArgumentError("idle fraction must be in [0, 1]");
  if (!(full_gbps >= 0.0)) throw ArgumentError("throughput must be >= 0");
  return full_gbps * idle_fraction * channels;
}

std::uint64_t storage_bits(std::uint32_t row_addr_bits, std::uint32_t col_addr_bits, std::uint32_t temp_ranges,
                           std::uint32_t sib_max) {
  if (row_addr_bits == 0 || col_addr_bits == 0 || temp_ranges == 0 || sib_max == 0) {
    throw ArgumentError("storage parameters must all be >= 1");
  }
  // Segment and source row addresses, plus one column address per range and temperature bin.
  return std::uint64_t{12} * row_addr_bits + std::uint64_t{sib_max} * temp_ranges * col_addr_bits;
}

json to_json(const ScheduleReport& r) {
  json j = {{"mode", to_string(r.mode)},
            {"transfer_rate", r.transfer_rate},
            {"iteration_ns", r.iteration_ns},
            {"banks", r.banks},
            {"bits_per_iteration", r.bits_per_iteration},
            {"throughput_gbps", r.throughput_gbps},
            {"channels", r.channels},
            {"system_throughput_gbps", r.system_throughput_gbps()},
            {"latency_ns", r.latency_ns},
            {"hash_bottleneck", r.hash_bottleneck}};
  if (!is_baseline(r.mode)) j["sib"] = r.sib;
  return j;
}

json to_json(const Projection& p) {
  json rows = json::array();
  for (std::size_t i = 0; i < p.rates.size(); ++i) {
    for (std::size_t m = 0; m < p.modes.size(); ++m) {
      json e = to_json(p.reports[i][m]);
      e["ratio"] = p.ratio(p.rates[i], p.modes[m]);
      rows.push_back(std::move(e));
    }
  }
  return {{"reference", to_string(p.reference)}, {"rates", p.rates}, {"entries", rows}};
}

json to_json(const ModelParams& p) {
  return {{"channels", p.channels},
          {"blocks_per_row", p.blocks_per_row},
          {"parallel_banks", p.parallel_banks},
          {"t1", p.t1},
          {"t2", p.t2},
          {"copy_restore_ns", p.copy_restore_ns},
          {"drange_trcd_ns", p.drange_trcd_ns},
          {"drange_pre_gap_ns", p.drange_pre_gap_ns},
          {"drange_basic_bits_per_read", p.drange_basic_bits_per_read},
          {"drange_enhanced_block_entropy", p.drange_enhanced_block_entropy},
          {"drange_cycles", p.drange_cycles},
          {"talukder_trp_ns", p.talukder_trp_ns},
          {"talukder_basic_row_cells", p.talukder_basic_row_cells},
          {"talukder_basic_rows_per_output", p.talukder_basic_rows_per_output},
          {"talukder_enhanced_row_entropy", p.talukder_enhanced_row_entropy},
          {"talukder_basic_first_word_reads", p.talukder_basic_first_word_reads},
          {"talukder_enhanced_first_word_reads", p.talukder_enhanced_first_word_reads}};
}

json to_json(const HashParams& p) {
  return {{"latency_cycles", p.latency_cycles}, {"clock_ghz", p.clock_ghz}, {"throughput_gbps", p.throughput_gbps}};
}

void apply_json(const json& j, ModelParams& p) {
  common::Binder<ModelParams>("model", p)
      .field("channels", &ModelParams::channels)
      .field("blocks_per_row", &ModelParams::blocks_per_row)
      .field("parallel_banks", &ModelParams::parallel_banks)
      .field("t1", &ModelParams::t1)
      .field("t2", &ModelParams::t2)
      .field("copy_restore_ns", &ModelParams::copy_restore_ns)
      .field("drange_trcd_ns", &ModelParams::drange_trcd_ns)
      .field("drange_pre_gap_ns", &ModelParams::drange_pre_gap_ns)
      .field("drange_basic_bits_per_read", &ModelParams::drange_basic_bits_per_read)
      .field("drange_enhanced_block_entropy", &ModelParams::drange_enhanced_block_entropy)
      .field("drange_cycles", &ModelParams::drange_cycles)
      .field("talukder_trp_ns", &ModelParams::talukder_trp_ns)
      .field("talukder_basic_row_cells", &ModelParams::talukder_basic_row_cells)
      .field("talukder_basic_rows_per_output", &ModelParams::talukder_basic_rows_per_output)
      .field("talukder_enhanced_row_entropy", &ModelParams::talukder_enhanced_row_entropy)
      .field("talukder_basic_first_word_reads", &ModelParams::talukder_basic_first_word_reads)
      .field("talukder_enhanced_first_word_reads", &ModelParams::talukder_enhanced_first_word_reads)
      .apply(j);
  p.validate();
}

void apply_json(const json& j, HashParams& p) {
  common::Binder<HashParams>("hash", p)
      .field("latency_cycles", &HashParams::latency_cycles)
      .field("clock_ghz", &HashParams::clock_ghz)
      .field("throughput_gbps", &HashParams::throughput_gbps)
      .apply(j);
  p.validate();
}

void write_reports_csv(std::ostream& os, const std::vector<ScheduleReport>& reports) {
  os << "mode,transfer_rate,iteration_ns,sib,banks,bits_per_iteration,throughput_gbps,channels,"
        "system_throughput_gbps,latency_ns,hash_bottleneck\n";
  for (const auto& r : reports) {
    os << to_string(r.mode) << ',' << r.transfer_rate << ',' << r.iteration_ns << ',' << r.sib << ',' << r.banks
       << ',' << r.bits_per_iteration << ',' << r.throughput_gbps << ',' << r.channels << ','
       << r.system_throughput_gbps() << ',' << r.latency_ns << ',' << (r.hash_bottleneck ? 1 : 0) << '\n';
  }
}

void write_projection_csv(std::ostream& os, const Projection& p) {
  os << "transfer_rate,mode,system_throughput_gbps,ratio_vs_" << to_string(p.reference) << '\n';
  for (std::size_t i = 0; i < p.rates.size(); ++i) {
    for (std::size_t m = 0; m < p.modes.size(); ++m) {
      os << p.rates[i] << ',' << to_string(p.modes[m]) << ',' << p.reports[i][m].system_throughput_gbps() << ','
         << p.ratio(p.rates[i], p.modes[m]) << '\n';
    }
  }
}

}  // namespace quac::perf
