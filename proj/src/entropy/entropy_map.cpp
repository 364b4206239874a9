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

#include "quac/entropy/entropy_map.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <iomanip>

#include "quac/common/error.hpp"

namespace quac::entropy {

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double bitline_entropy(std::uint32_t ones_count, std::uint32_t trials) {
  if (trials == 0) throw ArgumentError("bitline_entropy: trials must be >= 1");
  if (ones_count > trials) throw ArgumentError("bitline_entropy: ones_count exceeds trials");
  return binary_entropy(static_cast<double>(ones_count) / trials);
}

double EntropyMap::average_block_entropy() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& s : segments) {
    for (double b : s.block_entropy) sum += b;
    n += s.block_entropy.size();
  }
  return n ? sum / n : 0.0;
}

double EntropyMap::mean_segment_entropy() const {
  if (segments.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& s : segments) sum += s.total;
  return sum / segments.size();
}

double EntropyMap::max_segment_entropy() const {
  return segments.empty() ? 0.0 : segments[best_segment()].total;
}

std::size_t EntropyMap::best_segment() const {
  if (segments.empty()) throw ArgumentError("entropy map has no segments");
  std::size_t best = 0;
  for (std::size_t i = 1; i < segments.size(); ++i)
    if (segments[i].total > segments[best].total) best = i;
  return best;
}

std::size_t EntropyMap::best_segment(std::uint32_t bank_group, std::uint32_t bank) const {
  std::size_t best = segments.size();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& a = segments[i].addr;
    if (a.bank_group != bank_group || a.bank != bank) continue;
    if (best == segments.size() || segments[i].total > segments[best].total) best = i;
  }
  if (best == segments.size()) throw ArgumentError("entropy map has no segment in the requested bank");
  return best;
}

nlohmann::json to_json(const EntropyMap& m, bool include_bitlines) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : m.segments) {
    nlohmann::json js = {{"bank_group", s.addr.bank_group},
                         {"bank", s.addr.bank},
                         {"segment", s.addr.segment_index},
                         {"entropy", s.total},
                         {"block_entropy", s.block_entropy}};
    if (include_bitlines && !s.bitline_entropy.empty()) js["bitline_entropy"] = s.bitline_entropy;
    segs.push_back(std::move(js));
  }
  return {{"device_id", m.device_id},
          {"pattern", m.pattern},
          {"temperature_c", m.temperature_c},
          {"trials", m.trials},
          {"cache_block_bits", m.cache_block_bits},
          {"bitlines_per_row", m.bitlines_per_row},
          {"average_block_entropy", m.average_block_entropy()},
          {"segments", segs}};
}

EntropyMap entropy_map_from_json(const nlohmann::json& j) {
  try {
    EntropyMap m;
    m.device_id = j.at("device_id").get<std::string>();
    m.pattern = j.at("pattern").get<std::string>();
    m.temperature_c = j.at("temperature_c").get<double>();
    m.trials = j.at("trials").get<std::uint32_t>();
    m.cache_block_bits = j.at("cache_block_bits").get<std::uint32_t>();
    m.bitlines_per_row = j.at("bitlines_per_row").get<std::uint32_t>();
    for (const auto& js : j.at("segments")) {
      SegmentEntropy s;
      s.addr = {js.at("bank_group").get<std::uint32_t>(), js.at("bank").get<std::uint32_t>(),
                js.at("segment").get<std::uint32_t>()};
      s.block_entropy = js.at("block_entropy").get<std::vector<double>>();
      s.total = js.at("entropy").get<double>();
      if (js.contains("bitline_entropy")) s.bitline_entropy = js.at("bitline_entropy").get<std::vector<float>>();
      m.segments.push_back(std::move(s));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("entropy_map", e.what());
  }
}

void write_segment_csv(const EntropyMap& m, std::ostream& out) {
  out << "bank_group,bank,segment,entropy\n" << std::setprecision(10);
  for (const auto& s : m.segments)
    out << s.addr.bank_group << ',' << s.addr.bank << ',' << s.addr.segment_index << ',' << s.total << '\n';
}

}  // namespace quac::entropy
