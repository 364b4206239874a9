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

#include "quac/entropy/sib_plan.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "quac/common/error.hpp"

namespace quac::entropy {

const TemperatureBin& SibPlan::bin_for(double celsius) const {
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const auto& b = bins[i];
    const bool last = i + 1 == bins.size();
    if (celsius >= b.low && (celsius < b.high || (last && celsius == b.high))) return b;
  }
  throw DomainError("uncharacterized temperature " + std::to_string(celsius) + " C");
}

std::uint32_t SibPlan::min_sib() const {
  std::uint32_t m = ~0u;
  for (const auto& b : bins)
    for (const auto& bp : b.banks) m = std::min(m, bp.sib());
  return m == ~0u ? 0 : m;
}

std::uint32_t SibPlan::max_sib() const {
  std::uint32_t m = 0;
  for (const auto& b : bins)
    for (const auto& bp : b.banks) m = std::max(m, bp.sib());
  return m;
}

void SibPlan::validate() const {
  for (std::size_t i = 0; i < bins.size(); ++i) {
    const auto& b = bins[i];
    if (!(b.low < b.high)) throw ConfigError("plan.bins", "bin low must be below high");
    if (i > 0 && b.low < bins[i - 1].high) throw ConfigError("plan.bins", "bins overlap");
    for (const auto& bp : b.banks) {
      for (std::size_t r = 0; r < bp.ranges.size(); ++r) {
        const auto& cr = bp.ranges[r];
        if (cr.last_block < cr.first_block) throw ConfigError("plan.ranges", "inverted range");
        if (r > 0 && cr.first_block <= bp.ranges[r - 1].last_block)
          throw ConfigError("plan.ranges", "ranges must be sorted and disjoint");
        if (cr.entropy < kBitsPerInputBlock)
          throw InsufficientEntropy("plan range carries " + std::to_string(cr.entropy) + " bits, below 256");
      }
    }
  }
}

std::vector<BinSpec> default_bins(double low, double high, std::uint32_t count) {
  if (count == 0 || count > 10) throw ArgumentError("bin count must lie in [1, 10]");
  if (!(low < high)) throw ArgumentError("bin range must be non-empty");
  std::vector<BinSpec> out;
  const double w = (high - low) / count;
  for (std::uint32_t i = 0; i < count; ++i) out.push_back({low + i * w, i + 1 == count ? high : low + (i + 1) * w});
  return out;
}

BankPlan cut_segment(const SegmentEntropy& segment) {
  if (segment.total < kBitsPerInputBlock)
    throw InsufficientEntropy("insufficient entropy: best segment carries " + std::to_string(segment.total) +
                              " bits, below 256");
  BankPlan plan;
  plan.segment = segment.addr;
  plan.segment_entropy = segment.total;
  double acc = 0.0;
  std::uint32_t start = 0;
  for (std::uint32_t b = 0; b < segment.block_entropy.size(); ++b) {
    acc += segment.block_entropy[b];
    if (acc >= kBitsPerInputBlock) {
      plan.ranges.push_back({start, b, acc});
      acc = 0.0;
      start = b + 1;
    }
  }
  return plan;
}

SibPlan build_sib_plan(const std::vector<std::pair<BinSpec, EntropyMap>>& per_bin) {
  if (per_bin.empty()) throw ArgumentError("build_sib_plan: no bins");
  SibPlan plan;
  plan.device_id = per_bin.front().second.device_id;
  plan.pattern = per_bin.front().second.pattern;
  plan.cache_block_bits = per_bin.front().second.cache_block_bits;
  for (const auto& [spec, map] : per_bin) {
    if (map.device_id != plan.device_id || map.pattern != plan.pattern)
      throw ArgumentError("build_sib_plan: maps must share device and pattern");
    TemperatureBin bin{spec.low, spec.high, {}};
    std::set<std::pair<std::uint32_t, std::uint32_t>> banks;
    for (const auto& s : map.segments) banks.insert({s.addr.bank_group, s.addr.bank});
    for (const auto& [bg, bank] : banks) bin.banks.push_back(cut_segment(map.segments[map.best_segment(bg, bank)]));
    plan.bins.push_back(std::move(bin));
  }
  plan.validate();
  return plan;
}

void verify_bin(const TemperatureBin& bin, const EntropyMap& map) {
  for (const auto& bp : bin.banks) {
    const SegmentEntropy* seg = nullptr;
    for (const auto& s : map.segments)
      if (s.addr == bp.segment) seg = &s;
    if (!seg) throw ArgumentError("verify_bin: plan segment missing from map");
    for (const auto& r : bp.ranges) {
      double sum = 0.0;
      for (std::uint32_t b = r.first_block; b <= r.last_block; ++b) sum += seg->block_entropy.at(b);
      if (sum < kBitsPerInputBlock)
        throw InsufficientEntropy("range [" + std::to_string(r.first_block) + ", " + std::to_string(r.last_block) +
                                  "] carries " + std::to_string(sum) + " bits under this map");
    }
  }
}

nlohmann::json to_json(const SibPlan& p) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : p.bins) {
    nlohmann::json banks = nlohmann::json::array();
    for (const auto& bp : b.banks) {
      nlohmann::json ranges = nlohmann::json::array();
      for (const auto& r : bp.ranges)
        ranges.push_back({{"first_block", r.first_block}, {"last_block", r.last_block}, {"entropy", r.entropy}});
      banks.push_back({{"bank_group", bp.segment.bank_group},
                       {"bank", bp.segment.bank},
                       {"segment", bp.segment.segment_index},
                       {"segment_entropy", bp.segment_entropy},
                       {"sib", bp.sib()},
                       {"ranges", ranges}});
    }
    bins.push_back({{"low_c", b.low}, {"high_c", b.high}, {"banks", banks}});
  }
  return {{"device_id", p.device_id}, {"pattern", p.pattern}, {"cache_block_bits", p.cache_block_bits}, {"bins", bins}};
}

SibPlan sib_plan_from_json(const nlohmann::json& j) {
  SibPlan p;
  try {
    p.device_id = j.at("device_id").get<std::string>();
    p.pattern = j.at("pattern").get<std::string>();
    p.cache_block_bits = j.at("cache_block_bits").get<std::uint32_t>();
    for (const auto& jb : j.at("bins")) {
      TemperatureBin b{jb.at("low_c").get<double>(), jb.at("high_c").get<double>(), {}};
      for (const auto& jp : jb.at("banks")) {
        BankPlan bp;
        bp.segment = {jp.at("bank_group").get<std::uint32_t>(), jp.at("bank").get<std::uint32_t>(),
                      jp.at("segment").get<std::uint32_t>()};
        bp.segment_entropy = jp.at("segment_entropy").get<double>();
        for (const auto& jr : jp.at("ranges"))
          bp.ranges.push_back({jr.at("first_block").get<std::uint32_t>(), jr.at("last_block").get<std::uint32_t>(),
                               jr.at("entropy").get<double>()});
        b.banks.push_back(std::move(bp));
      }
      p.bins.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("plan", e.what());
  }
  p.validate();
  return p;
}

}  // namespace quac::entropy
