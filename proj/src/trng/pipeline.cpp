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

#include "quac/trng/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <thread>

#include "quac/common/error.hpp"
#include "quac/common/rng.hpp"
#include "quac/engine/engine.hpp"

namespace quac::trng {

using dram::kRowsPerSegment;

ReservedLayout make_layout(const dram::DeviceModel& model, const entropy::TemperatureBin& bin) {
  const auto& g = model.geometry();
  ReservedLayout layout;
  for (const auto& bp : bin.banks) {
    const auto seg = bp.segment;
    model.check_segment(seg);
    const std::uint32_t sub = g.subarray_of(seg.base_row());
    std::uint32_t neighbour = ~0u;
    if (seg.segment_index + 1 < g.segments_per_bank && g.subarray_of(seg.base_row() + kRowsPerSegment) == sub)
      neighbour = seg.segment_index + 1;
    else if (seg.segment_index > 0 && g.subarray_of(seg.base_row() - kRowsPerSegment) == sub)
      neighbour = seg.segment_index - 1;
    if (neighbour == ~0u)
      throw UnsupportedOperation("no room for source rows in the subarray of segment " +
                                 std::to_string(seg.segment_index));
    layout.banks.push_back({seg, neighbour * kRowsPerSegment, neighbour * kRowsPerSegment + 1});
  }
  return layout;
}

void install_layout(dram::Device& device, const ReservedLayout& layout) {
  for (const auto& rb : layout.banks) {
    engine::BankEngine e(device, rb.segment.bank_group, rb.segment.bank);
    auto& st = e.state();
    const double slot = device.model().timings().slot();
    double t = st.now;
    if (st.last_issue) t = std::max(t, *st.last_issue + slot);
    e.write_row(rb.zeros_row, 0, t, true);
    e.write_row(rb.ones_row, 1, t + slot, true);
    st.now = t + 2 * slot;
    st.reserved_rows.insert({rb.zeros_row, rb.ones_row});
    for (std::uint32_t i = 0; i < kRowsPerSegment; ++i) st.reserved_rows.insert(rb.segment.row(i));
  }
}

namespace {

const entropy::BankPlan& plan_for(const entropy::TemperatureBin& bin, const ReservedBank& rb) {
  for (const auto& bp : bin.banks)
    if (bp.segment == rb.segment) return bp;
  throw ArgumentError("reserved layout does not match the plan for this temperature");
}

std::vector<Word256> run_bank(dram::Device& device, const ReservedBank& rb, const entropy::BankPlan& bp,
                              std::uint64_t seed, const PipelineOptions& o) {
  const auto& model = device.model();
  const auto& tm = model.timings();
  const auto& g = model.geometry();
  engine::BankEngine e(device, rb.segment.bank_group, rb.segment.bank);
  auto& st = e.state();
  double t = st.now;
  if (st.last_issue) t = std::max(t, *st.last_issue + tm.slot());

  const double copy_cycle = o.t1 + o.t2 + tm.tWR + tm.tRP;
  for (std::uint32_t i = 0; i < kRowsPerSegment; ++i) {
    e.copy_row(o.pattern.fill(i) ? rb.ones_row : rb.zeros_row, rb.segment.row(i), t, true);
    t += copy_cycle;
  }
  e.set_next_experiment_seed(seed);
  e.act(rb.segment.row(0), t);
  e.pre(t + o.t1);
  const double second = t + o.t1 + o.t2;
  e.act(rb.segment.row(3), second);
  t = second + tm.tRCD;

  std::vector<Word256> words;
  words.reserve(bp.ranges.size());
  BitVector message;
  for (const auto& r : bp.ranges) {
    message.clear();
    message.reserve(static_cast<std::size_t>(r.blocks()) * g.cache_block_bits);
    for (std::uint32_t b = r.first_block; b <= r.last_block; ++b) {
      const auto blk = e.read_block(b, t);
      message.insert(message.end(), blk.begin(), blk.end());
      t += tm.ccd_l();
    }
    words.push_back(sha256_digest(message));
  }
  t = std::max(t, second + tm.tRAS);
  e.pre(t);
  st.now = t + tm.tRP;
  return words;
}

}  // namespace

std::vector<Word256> generate_iteration(dram::Device& device, const ReservedLayout& layout,
                                        const entropy::SibPlan& plan, double temperature_c,
                                        std::uint64_t iteration_seed, const PipelineOptions& options) {
  const auto& bin = plan.bin_for(temperature_c);
  if (layout.banks.empty()) throw ArgumentError("reserved layout has no banks");
  std::vector<const entropy::BankPlan*> plans;
  for (const auto& rb : layout.banks) {
    plans.push_back(&plan_for(bin, rb));
    if (plans.back()->sib() == 0) throw InsufficientEntropy("insufficient entropy: plan has SIB = 0");
    const auto& st = device.bank(rb.segment.bank_group, rb.segment.bank);
    if (!st.reserved_rows.count(rb.zeros_row) || !st.reserved_rows.count(rb.ones_row))
      throw ArgumentError("reserved layout is not installed on the device");
  }
  device.set_temperature(temperature_c);

  const std::size_t n = layout.banks.size();
  std::vector<std::vector<Word256>> per_bank(n);
  auto seed_of = [&](std::size_t i) {
    const auto& s = layout.banks[i].segment;
    return rng::key(iteration_seed, {s.bank_group, s.bank});
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i)
      per_bank[i] = run_bank(device, layout.banks[i], *plans[i], seed_of(i), options);
  } else {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < n; i = next++) {
            try {
              per_bank[i] = run_bank(device, layout.banks[i], *plans[i], seed_of(i), options);
            } catch (...) {
              errors[i] = std::current_exception();
            }
          }
        });
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<Word256> out;
  for (auto& v : per_bank) out.insert(out.end(), v.begin(), v.end());
  return out;
}

TrngPipeline::TrngPipeline(dram::Device& device, ReservedLayout layout, entropy::SibPlan plan,
                           PipelineOptions options)
    : device_(device), layout_(std::move(layout)), plan_(std::move(plan)), options_(options) {
  plan_.validate();
  install_layout(device_, layout_);
}

std::vector<Word256> TrngPipeline::generate_iteration(double temperature_c) {
  const std::uint64_t seed = rng::derive(options_.seed, iterations_);
  auto words = trng::generate_iteration(device_, layout_, plan_, temperature_c, seed, options_);
  ++iterations_;
  return words;
}

StreamResult stream(TrngPipeline& pipeline, double temperature_c, std::size_t n_bits, RngBuffer& buffer) {
  if (n_bits == 0) throw ArgumentError("stream: n_bits must be > 0");
  StreamResult r;
  r.bits.reserve(n_bits + RngBuffer::kWordBits);
  std::deque<Word256> pending;
  while (r.bits.size() < n_bits) {
    if (buffer.needs_refill() || buffer.fill_bits() == 0) {
      // Generate only while the buffered words cannot cover the rest of the request.
      const bool refill = pending.empty() && buffer.fill_bits() < n_bits - r.bits.size();
      if (refill) {
        auto words = pipeline.generate_iteration(temperature_c);
        pending.insert(pending.end(), words.begin(), words.end());
        ++r.refills;
      }
      while (!pending.empty() && buffer.push(pending.front())) pending.pop_front();
      if (refill) r.events.push_back({StreamEvent::Kind::kRefill, pipeline.iterations(), buffer.fill_bits()});
    }
    const Word256 w = buffer.pop();
    for (std::uint8_t byte : w)
      for (int k = 7; k >= 0; --k) r.bits.push_back((byte >> k) & 1u);
    r.events.push_back({StreamEvent::Kind::kDequeue, pipeline.iterations(), buffer.fill_bits()});
  }
  r.bits.resize(n_bits);
  return r;
}

}  // namespace quac::trng
