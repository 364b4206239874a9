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

#include "quac/entropy/characterize.hpp"

#include <atomic>
#include <thread>

#include "quac/common/error.hpp"
#include "quac/common/rng.hpp"
#include "quac/dram/physics.hpp"

namespace quac::entropy {

using dram::DeviceModel;

std::uint64_t trial_seed(std::uint64_t base, std::uint32_t t) {
  return rng::key(base, {rng::tag(rng::Domain::kTrial), t});
}

namespace {

std::vector<std::uint64_t> experiment_keys(const CharacterizeOptions& o) {
  std::vector<std::uint64_t> keys(o.trials);
  for (std::uint32_t t = 0; t < o.trials; ++t) keys[t] = DeviceModel::experiment_key(trial_seed(o.seed, t));
  return keys;
}

void count_segment(const DeviceModel& model, const dram::DataPattern& pattern, const dram::SegmentAddress& addr,
                   const CharacterizeOptions& o, const std::vector<std::uint64_t>& keys,
                   std::vector<std::uint32_t>& ones) {
  const auto sp = model.segment(addr);
  const std::uint32_t n = model.geometry().bitlines_per_row;
  std::array<double, 4> cells{};
  for (std::uint32_t i = 0; i < 4; ++i) cells[i] = pattern.fill(i);
  ones.assign(n, 0);
  for (std::uint32_t b = 0; b < n; ++b) {
    const std::uint64_t thr = model.threshold(sp, b, cells, 0, o.temperature_c);
    if (thr == 0) continue;
    if (thr == dram::kThresholdOne) {
      ones[b] = o.trials;
      continue;
    }
    const std::uint64_t nk = model.noise_key(sp, b);
    std::uint32_t count = 0;
    for (std::uint64_t ek : keys) count += dram::sample_with_threshold(thr, DeviceModel::draw(nk, ek));
    ones[b] = count;
  }
}

}  // namespace

std::vector<std::uint32_t> ones_counts(const DeviceModel& model, const dram::DataPattern& pattern,
                                       const dram::SegmentAddress& segment, const CharacterizeOptions& options) {
  if (options.trials < 1) throw ArgumentError("trials must be >= 1");
  std::vector<std::uint32_t> ones;
  count_segment(model, pattern, segment, options, experiment_keys(options), ones);
  return ones;
}

EntropyMap characterize(const DeviceModel& model, const dram::DataPattern& pattern,
                        const std::vector<dram::SegmentAddress>& segments, const CharacterizeOptions& options) {
  if (segments.empty()) throw ArgumentError("characterize: empty segment set");
  if (options.trials < 2) throw ArgumentError("characterize: trials must be >= 2");
  for (const auto& s : segments) model.check_segment(s);

  const auto& g = model.geometry();
  EntropyMap map;
  map.device_id = model.fingerprint();
  map.pattern = pattern.str();
  map.temperature_c = options.temperature_c;
  map.trials = options.trials;
  map.cache_block_bits = g.cache_block_bits;
  map.bitlines_per_row = g.bitlines_per_row;
  map.segments.resize(segments.size());

  const auto keys = experiment_keys(options);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    std::vector<std::uint32_t> ones;
    for (std::size_t i = next++; i < segments.size(); i = next++) {
      count_segment(model, pattern, segments[i], options, keys, ones);
      SegmentEntropy& s = map.segments[i];
      s.addr = segments[i];
      s.block_entropy.assign(g.blocks_per_row(), 0.0);
      if (options.keep_bitlines) s.bitline_entropy.resize(g.bitlines_per_row);
      for (std::uint32_t blk = 0; blk < g.blocks_per_row(); ++blk) {
        double sum = 0.0;
        for (std::uint32_t k = 0; k < g.cache_block_bits; ++k) {
          const std::uint32_t b = blk * g.cache_block_bits + k;
          const double h = bitline_entropy(ones[b], options.trials);
          if (options.keep_bitlines) s.bitline_entropy[b] = static_cast<float>(h);
          sum += h;
        }
        s.block_entropy[blk] = sum;
      }
      double total = 0.0;
      for (double v : s.block_entropy) total += v;
      s.total = total;
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, segments.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return map;
}

std::vector<dram::SegmentAddress> bank_segments(const DeviceModel& model, std::uint32_t bank_group,
                                                std::uint32_t bank, std::uint32_t first, std::uint32_t count) {
  std::vector<dram::SegmentAddress> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    dram::SegmentAddress a{bank_group, bank, first + i};
    model.check_segment(a);
    out.push_back(a);
  }
  return out;
}

}  // namespace quac::entropy
