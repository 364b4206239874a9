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

#include "quac/engine/engine.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "quac/common/error.hpp"
#include "quac/common/rng.hpp"
#include "quac/dram/physics.hpp"

namespace quac::engine {

using dram::DeviceModel;
using dram::SegmentAddress;

const char* to_string(CommandKind kind) {
  switch (kind) {
    case CommandKind::kAct: return "ACT";
    case CommandKind::kPre: return "PRE";
    case CommandKind::kWriteRow: return "WRITE_ROW";
    case CommandKind::kReadBlock: return "READ_BLOCK";
    case CommandKind::kCopyRow: return "COPY_ROW";
  }
  return "?";
}

Command Command::act(std::uint32_t bg, std::uint32_t bank, std::uint32_t row, double t) {
  Command c;
  c.kind = CommandKind::kAct;
  c.bank_group = bg;
  c.bank = bank;
  c.row = row;
  c.issue_time = t;
  return c;
}

Command Command::pre(std::uint32_t bg, std::uint32_t bank, double t) {
  Command c;
  c.kind = CommandKind::kPre;
  c.bank_group = bg;
  c.bank = bank;
  c.issue_time = t;
  return c;
}

Command Command::write_row(std::uint32_t bg, std::uint32_t bank, std::uint32_t row, std::uint8_t fill,
                           double t) {
  Command c = act(bg, bank, row, t);
  c.kind = CommandKind::kWriteRow;
  c.fill = fill;
  return c;
}

Command Command::read_block(std::uint32_t bg, std::uint32_t bank, std::uint32_t block, double t) {
  Command c = pre(bg, bank, t);
  c.kind = CommandKind::kReadBlock;
  c.block = block;
  return c;
}

Command Command::copy_row(std::uint32_t bg, std::uint32_t bank, std::uint32_t src, std::uint32_t dst,
                          double t) {
  Command c = act(bg, bank, src, t);
  c.kind = CommandKind::kCopyRow;
  c.dst_row = dst;
  return c;
}

double command_busy_ns(const Command& c, const dram::TimingParams& t, const dram::DramGeometry& g) {
  switch (c.kind) {
    case CommandKind::kAct:
    case CommandKind::kPre: return t.slot();
    case CommandKind::kReadBlock: return t.slot() + t.burst_ns();
    case CommandKind::kWriteRow:
      return (2.0 + g.blocks_per_row()) * t.slot() + g.blocks_per_row() * t.burst_ns();
    case CommandKind::kCopyRow: return 3.0 * t.slot();
  }
  return 0.0;
}

BankEngine::BankEngine(dram::Device& device, std::uint32_t bank_group, std::uint32_t bank,
                       std::uint64_t experiment_seed)
    : device_(device),
      model_(device.model()),
      bank_(device.bank(bank_group, bank)),
      bank_group_(bank_group),
      bank_index_(bank),
      seed_(experiment_seed) {}

void BankEngine::check_order(double t) {
  if (bank_.last_issue && !(t > *bank_.last_issue))
    throw ArgumentError("issue times must strictly increase per bank (got " + std::to_string(t) +
                        " after " + std::to_string(*bank_.last_issue) + ")");
  bank_.last_issue = t;
  bank_.now = std::max(bank_.now, t);
}

std::uint32_t BankEngine::check_row(std::uint32_t row) const {
  const auto& g = model_.geometry();
  if (row >= g.segments_per_bank * dram::kRowsPerSegment)
    throw ArgumentError("row " + std::to_string(row) + " out of range");
  return row;
}

bool BankEngine::close_if_idle(double t) {
  auto& d = bank_.decoder;
  if (!d.any_latch()) return true;
  if (d.precharge_issue_time && dram::elapsed(t - *d.precharge_issue_time, model_.timings().tRP)) {
    d = dram::DecoderState{};
    d.precharge_issue_time = t;
    bank_.first_row.reset();
    return true;
  }
  return false;
}

void BankEngine::require_closed(double t, const char* what) {
  if (!close_if_idle(t)) throw TimingViolation(std::string(what) + " requires a precharged bank");
}

void BankEngine::require_writable(std::uint32_t row, bool force) const {
  if (!force && bank_.reserved_rows.count(row))
    throw DomainError("row " + std::to_string(row) + " is reserved");
}

std::vector<float>& BankEngine::row_cells(std::uint32_t row) {
  auto& cells = bank_.cells[row];
  if (cells.empty()) cells.assign(model_.geometry().bitlines_per_row, 0.0f);
  return cells;
}

std::vector<std::uint32_t> BankEngine::act(std::uint32_t row, double t) {
  check_row(row);
  check_order(t);
  const bool fresh = close_if_idle(t) && !bank_.decoder.any_latch();
  auto step = dram::decoder_step(bank_.decoder, dram::DecoderCommand::act(row), t, model_.timings());
  bank_.decoder = step.state;
  if (fresh || !bank_.first_row) bank_.first_row = row;
  if (step.active_rows.size() >= 2) {
    sense(step.active_rows);
  } else {
    const std::uint32_t n = model_.geometry().bitlines_per_row;
    bank_.row_buffer.assign(n, 0);
    auto it = bank_.cells.find(row);
    if (it != bank_.cells.end())
      for (std::uint32_t b = 0; b < n; ++b) bank_.row_buffer[b] = it->second[b] >= 0.5f ? 1 : 0;
  }
  return step.active_rows;
}

std::vector<std::uint32_t> BankEngine::pre(double t) {
  check_order(t);
  auto step = dram::decoder_step(bank_.decoder, dram::DecoderCommand::pre(), t, model_.timings());
  bank_.decoder = step.state;
  if (!bank_.decoder.any_latch()) bank_.first_row.reset();
  return step.active_rows;
}

void BankEngine::write_row(std::uint32_t row, std::uint8_t fill, double t, bool force) {
  check_row(row);
  check_order(t);
  require_closed(t, "WRITE_ROW");
  require_writable(row, force);
  auto& cells = row_cells(row);
  std::fill(cells.begin(), cells.end(), fill ? 1.0f : 0.0f);
}

void BankEngine::write_row_bits(std::uint32_t row, std::span<const std::uint8_t> bits, double t, bool force) {
  check_row(row);
  if (bits.size() != model_.geometry().bitlines_per_row)
    throw ArgumentError("write_row_bits: expected one bit per bitline");
  check_order(t);
  require_closed(t, "WRITE_ROW");
  require_writable(row, force);
  auto& cells = row_cells(row);
  for (std::size_t b = 0; b < bits.size(); ++b) cells[b] = bits[b] ? 1.0f : 0.0f;
}

BitVector BankEngine::read_block(std::uint32_t block, double t) {
  const auto& g = model_.geometry();
  if (block >= g.blocks_per_row()) throw ArgumentError("cache block " + std::to_string(block) + " out of range");
  check_order(t);
  const auto& d = bank_.decoder;
  if (!d.any_latch()) throw TimingViolation("READ_BLOCK with no open row");
  if (!dram::elapsed(t - d.wordline_enable_time, model_.timings().tRCD))
    throw TimingViolation("READ_BLOCK issued " + std::to_string(t - d.wordline_enable_time) +
                          " ns after ACT, before tRCD elapsed");
  const auto first = bank_.row_buffer.begin() + static_cast<std::ptrdiff_t>(block) * g.cache_block_bits;
  return BitVector(first, first + g.cache_block_bits);
}

void BankEngine::copy_row(std::uint32_t src, std::uint32_t dst, double t, bool force) {
  check_row(src);
  check_row(dst);
  const auto& g = model_.geometry();
  if (g.subarray_of(src) != g.subarray_of(dst))
    throw UnsupportedOperation("COPY_ROW across subarrays (rows " + std::to_string(src) + " and " +
                               std::to_string(dst) + ")");
  check_order(t);
  require_closed(t, "COPY_ROW");
  require_writable(dst, force);
  if (src == dst) return;
  auto& out = row_cells(dst);
  auto it = bank_.cells.find(src);
  if (it == bank_.cells.end()) std::fill(out.begin(), out.end(), 0.0f);
  else std::copy(it->second.begin(), it->second.end(), out.begin());
}

void BankEngine::sense(const std::vector<std::uint32_t>& rows) {
  const auto& g = model_.geometry();
  const std::uint32_t n = g.bitlines_per_row;
  const SegmentAddress seg{bank_group_, bank_index_, rows.front() / dram::kRowsPerSegment};
  const std::uint32_t first = *bank_.first_row % dram::kRowsPerSegment;
  std::uint32_t mask = 0;
  for (auto r : rows) mask |= 1u << (r % dram::kRowsPerSegment);

  const std::uint64_t seed = next_seed_ ? *next_seed_ : rng::derive(seed_, bank_.sense_events);
  next_seed_.reset();
  ++bank_.sense_events;
  const std::uint64_t ek = DeviceModel::experiment_key(seed);
  const double temp = device_.temperature();
  const auto sp = model_.segment(seg);

  auto& cache = bank_.sense_cache;
  auto entry = std::find_if(cache.begin(), cache.end(), [&](const dram::SenseCacheEntry& e) {
    return e.addr == seg && e.temperature_c == temp && e.first_row == first && e.active_mask == mask;
  });
  if (entry == cache.end()) {
    if (cache.size() >= 4) cache.pop_front();
    dram::SenseCacheEntry e;
    e.addr = seg;
    e.temperature_c = temp;
    e.first_row = first;
    e.active_mask = mask;
    e.noise_keys.resize(n);
    for (std::uint32_t b = 0; b < n; ++b) e.noise_keys[b] = model_.noise_key(sp, b);
    cache.push_back(std::move(e));
    entry = std::prev(cache.end());
  }

  std::array<const float*, 4> cells{};
  for (auto r : rows) {
    auto it = bank_.cells.find(r);
    cells[r % dram::kRowsPerSegment] = it == bank_.cells.end() ? nullptr : it->second.data();
  }
  constexpr std::uint64_t kUnset = ~std::uint64_t{0};
  bank_.row_buffer.resize(n);
  for (std::uint32_t b = 0; b < n; ++b) {
    std::array<double, 4> c{0.5, 0.5, 0.5, 0.5};
    bool binary = true;
    unsigned combo = 0;
    for (std::uint32_t i = 0; i < 4; ++i) {
      if (!(mask >> i & 1u)) continue;
      const float v = cells[i] ? cells[i][b] : 0.0f;
      c[i] = v;
      if (v == 1.0f) combo |= 1u << i;
      else if (v != 0.0f) binary = false;
    }
    std::uint64_t thr;
    if (binary) {
      auto& vec = entry->thresholds[combo];
      if (vec.empty()) vec.assign(n, kUnset);
      if (vec[b] == kUnset) vec[b] = model_.threshold(sp, b, c, first, temp);
      thr = vec[b];
    } else {
      thr = model_.threshold(sp, b, c, first, temp);
    }
    std::uint8_t bit;
    if (thr == 0) bit = 0;
    else if (thr == dram::kThresholdOne) bit = 1;
    else bit = static_cast<std::uint8_t>(
        dram::sample_with_threshold(thr, DeviceModel::draw(entry->noise_keys[b], ek)));
    bank_.row_buffer[b] = bit;
  }
  for (auto r : rows) {
    auto& dst = row_cells(r);
    for (std::uint32_t b = 0; b < n; ++b) dst[b] = bank_.row_buffer[b] ? 1.0f : 0.0f;
  }
}

TraceResult execute_trace(dram::Device& device, std::span<const Command> commands,
                          std::uint64_t experiment_seed) {
  TraceResult result;
  const auto& model = device.model();
  std::map<std::pair<std::uint32_t, std::uint32_t>, BankEngine> engines;
  std::set<RowKey> touched;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    const Command& c = commands[i];
    model.check_bank(c.bank_group, c.bank);
    auto key = std::make_pair(c.bank_group, c.bank);
    auto it = engines.find(key);
    if (it == engines.end()) {
      const std::uint64_t bank_seed = rng::key(experiment_seed, {c.bank_group, c.bank});
      it = engines.emplace(key, BankEngine(device, c.bank_group, c.bank, bank_seed)).first;
    }
    BankEngine& e = it->second;
    CommandOutcome outcome{i, {}};
    switch (c.kind) {
      case CommandKind::kAct:
        outcome.active_rows = e.act(c.row, c.issue_time);
        if (outcome.active_rows.size() >= 2)
          for (auto r : outcome.active_rows) touched.insert({c.bank_group, c.bank, r});
        break;
      case CommandKind::kPre: outcome.active_rows = e.pre(c.issue_time); break;
      case CommandKind::kWriteRow:
        e.write_row(c.row, c.fill, c.issue_time, c.force);
        touched.insert({c.bank_group, c.bank, c.row});
        break;
      case CommandKind::kReadBlock:
        result.payloads.push_back(e.read_block(c.block, c.issue_time));
        outcome.active_rows = e.state().decoder.active_rows();
        break;
      case CommandKind::kCopyRow:
        e.copy_row(c.row, c.dst_row, c.issue_time, c.force);
        touched.insert({c.bank_group, c.bank, c.dst_row});
        break;
    }
    result.bus_busy_ns += command_busy_ns(c, model.timings(), model.geometry());
    result.outcomes.push_back(std::move(outcome));
  }
  for (const auto& k : touched) {
    const auto& bank = device.bank(std::get<0>(k), std::get<1>(k));
    auto it = bank.cells.find(std::get<2>(k));
    if (it != bank.cells.end()) result.final_charges[k] = it->second;
  }
  return result;
}

BitVector run_quac(dram::Device& device, const SegmentAddress& segment, const dram::DataPattern& pattern,
                   double t1, double t2, std::uint64_t experiment_seed) {
  const auto& model = device.model();
  const auto& tm = model.timings();
  model.check_segment(segment);
  if (!(t1 > 0.0 && t2 > 0.0)) throw ArgumentError("t1 and t2 must be positive");
  if (t1 >= tm.tRAS || t2 >= tm.tRP)
    throw DomainError("no QUAC under legal timings: t1 must be < tRAS and t2 < tRP");

  BankEngine e(device, segment.bank_group, segment.bank);
  auto& bank = e.state();
  double t = bank.now;
  if (bank.last_issue) t = std::max(t, *bank.last_issue + tm.slot());
  for (std::uint32_t i = 0; i < dram::kRowsPerSegment; ++i) {
    e.write_row(segment.row(i), pattern.fill(i), t, true);
    t += tm.slot();
  }
  e.set_next_experiment_seed(experiment_seed);
  e.act(segment.row(0), t);
  e.pre(t + t1);
  const double second = t + t1 + t2;
  e.act(segment.row(3), second);
  BitVector out = e.row_buffer();
  e.pre(second + tm.tRAS);
  bank.now = second + tm.tRAS + tm.tRP;
  return out;
}

void copy_row(dram::Device& device, std::uint32_t bank_group, std::uint32_t bank, std::uint32_t src,
              std::uint32_t dst, bool force) {
  BankEngine e(device, bank_group, bank);
  auto& st = e.state();
  const auto& tm = device.model().timings();
  double t = st.now;
  if (st.last_issue) t = std::max(t, *st.last_issue + tm.slot());
  e.copy_row(src, dst, t, force);
  st.now = t + kDefaultT1 + kDefaultT2 + tm.tWR + tm.tRP;
}

BitVector read_row(dram::Device& device, std::uint32_t bank_group, std::uint32_t bank, std::uint32_t row) {
  BankEngine e(device, bank_group, bank);
  auto& st = e.state();
  const auto& tm = device.model().timings();
  const auto& g = device.model().geometry();
  double t = st.now;
  if (st.last_issue) t = std::max(t, *st.last_issue + tm.slot());
  e.act(row, t);
  t += tm.tRCD;
  BitVector out;
  out.reserve(g.bitlines_per_row);
  for (std::uint32_t b = 0; b < g.blocks_per_row(); ++b) {
    auto blk = e.read_block(b, t);
    out.insert(out.end(), blk.begin(), blk.end());
    t += tm.ccd_l();
  }
  t = std::max(t, st.decoder.wordline_enable_time + tm.tRAS);
  e.pre(t);
  st.now = t + tm.tRP;
  return out;
}

}  // namespace quac::engine
