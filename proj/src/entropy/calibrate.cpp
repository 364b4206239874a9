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

#include "quac/entropy/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quac/common/error.hpp"
#include "quac/entropy/entropy_map.hpp"

namespace quac::entropy {

EntropyExpectation::EntropyExpectation(std::uint32_t trials, double z_max, double dz) : z_max_(z_max), dz_(dz) {
  if (trials < 1) throw ArgumentError("trials must be >= 1");
  const auto n_pts = static_cast<std::size_t>(std::lround(2.0 * z_max / dz)) + 1;
  table_.resize(n_pts);
  const double n = trials;
  const double lg_n1 = std::lgamma(n + 1.0);
  for (std::size_t i = 0; i < n_pts; ++i) {
    const double z = -z_max + i * dz;
    const double p = 0.5 * std::erfc(-z / std::numbers::sqrt2);
    if (p <= 0.0 || p >= 1.0) {
      table_[i] = 0.0;
      continue;
    }
    const double sd = std::sqrt(n * p * (1.0 - p));
    const double lo = std::max(0.0, std::floor(n * p - 12.0 * sd - 1.0));
    const double hi = std::min(n, std::ceil(n * p + 12.0 * sd + 1.0));
    double e = 0.0;
    for (double k = lo; k <= hi; k += 1.0) {
      const double log_pmf = lg_n1 - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                             (n - k) * std::log1p(-p);
      e += std::exp(log_pmf) * binary_entropy(k / n);
    }
    table_[i] = e < 1e-12 ? 0.0 : e;
  }
}

double EntropyExpectation::at(double z) const {
  if (z <= -z_max_ || z >= z_max_) return 0.0;
  const double f = (z + z_max_) / dz_;
  const auto i = static_cast<std::size_t>(f);
  const double w = f - i;
  return i + 1 < table_.size() ? table_[i] * (1.0 - w) + table_[i + 1] * w : table_.back();
}

double EntropyExpectation::bitline(double bracket, double multiplier, double offset_sigma, double thermal_sigma,
                                   double temperature_factor) const {
  const double gain = multiplier * temperature_factor / thermal_sigma;
  if (offset_sigma <= 0.0) return at(gain * bracket);
  // z = gain * (bracket + o); integrate over z with o = z / gain - bracket.
  const double inv = 1.0 / (offset_sigma * gain);
  double sum = 0.0;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i] == 0.0) continue;
    const double z = -z_max_ + i * dz_;
    const double u = (z / gain - bracket) / offset_sigma;
    sum += table_[i] * std::exp(-0.5 * u * u);
  }
  return sum * dz_ * inv / std::sqrt(2.0 * std::numbers::pi);
}

double pattern_bracket(const dram::DataPattern& pattern, double first_row_weight, double later_row_weight) {
  double b = 0.0;
  for (std::uint32_t i = 0; i < 4; ++i) b += (i == 0 ? first_row_weight : later_row_weight) * (pattern.fill(i) - 0.5);
  return b;
}

double expected_segment_entropy(const dram::DeviceModel& model, const dram::DataPattern& pattern,
                                const EntropyExpectation& table, double multiplier, std::uint32_t columns) {
  const auto& v = model.variation();
  const auto& g = model.geometry();
  const double b = pattern_bracket(pattern, v.first_row_weight, v.later_row_weight);
  double sum = 0.0;
  for (std::uint32_t c = 0; c < columns; ++c) {
    const auto bitline = static_cast<std::uint32_t>((c + 0.5) / columns * g.bitlines_per_row);
    sum += table.bitline(b, multiplier, v.sa_offset_sigma * model.column_profile(bitline), v.thermal_noise_sigma);
  }
  return sum / columns * g.bitlines_per_row;
}

CalibrationTargets calibration_targets_from_json(const nlohmann::json& j) {
  CalibrationTargets t;
  try {
    if (j.contains("best_pattern")) t.best_pattern = j.at("best_pattern").get<std::string>();
    if (j.contains("best_block_entropy")) t.best_block_entropy = j.at("best_block_entropy").get<double>();
    if (j.contains("worst_pattern")) t.worst_pattern = j.at("worst_pattern").get<std::string>();
    if (j.contains("worst_block_entropy")) t.worst_block_entropy = j.at("worst_block_entropy").get<double>();
    if (j.contains("max_segment_entropy")) t.max_segment_entropy = j.at("max_segment_entropy").get<double>();
    if (j.contains("trials")) t.trials = j.at("trials").get<std::uint32_t>();
    if (j.contains("sample_segments")) t.sample_segments = j.at("sample_segments").get<std::uint32_t>();
    if (j.contains("column_samples")) t.column_samples = j.at("column_samples").get<std::uint32_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("calibration_targets", e.what());
  }
  return t;
}

namespace {

template <typename F>
double bisect(F f, double lo, double hi, int iters) {
  // f increasing; returns x with f(x) ~ 0.
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Evaluator {
  const dram::DeviceConfig& base;
  const CalibrationTargets& targets;
  EntropyExpectation table;

  dram::DeviceModel model(const dram::VariationProfile& v) const { return {base.geometry, base.timings, v}; }

  std::vector<double> multipliers(const dram::DeviceModel& m, std::uint32_t count) const {
    const std::uint32_t total = m.geometry().segments_per_bank;
    count = std::min(count, total);
    std::vector<double> out;
    for (std::uint32_t i = 0; i < count; ++i)
      out.push_back(m.segment({0, 0, static_cast<std::uint32_t>(std::uint64_t(i) * total / count)}).multiplier);
    return out;
  }

  double mean_block(const dram::DeviceModel& m, const std::vector<double>& mult, const dram::DataPattern& p) const {
    double s = 0.0;
    for (double k : mult) s += expected_segment_entropy(m, p, table, k, targets.column_samples);
    return s / mult.size() / m.geometry().blocks_per_row();
  }
};

}  // namespace

CalibrationResult calibrate(const dram::DeviceConfig& base, const CalibrationTargets& targets) {
  const auto best = dram::DataPattern::parse(targets.best_pattern);
  const auto worst = dram::DataPattern::parse(targets.worst_pattern);
  if (!(targets.best_block_entropy > targets.worst_block_entropy && targets.worst_block_entropy > 0.0))
    throw ConfigError("calibration_targets", "need best > worst > 0");
  Evaluator ev{base, targets, EntropyExpectation(targets.trials, 9.0, 0.01)};
  dram::VariationProfile v = base.variation;
  const double ratio_target = targets.worst_block_entropy / targets.best_block_entropy;

  for (int round = 0; round < 2; ++round) {
    const auto mult = ev.multipliers(ev.model(v), targets.sample_segments);
    auto fit_sigma = [&](double s) {
      dram::VariationProfile t = v;
      t.sa_offset_sigma = s;
      const double log_sigma = bisect(
          [&](double ls) {
            t.thermal_noise_sigma = std::exp(ls);
            return ev.mean_block(ev.model(t), mult, best) - targets.best_block_entropy;
          },
          std::log(1e-5), std::log(10.0), 32);
      t.thermal_noise_sigma = std::exp(log_sigma);
      return t;
    };
    const double s = bisect(
        [&](double s_try) {
          const auto t = fit_sigma(s_try);
          const auto m = ev.model(t);
          return ev.mean_block(m, mult, worst) / ev.mean_block(m, mult, best) - ratio_target;
        },
        0.05, 5.0, 30);
    v = fit_sigma(s);

    // The highest-entropy segment is the one with the smallest multiplier.
    v.spatial_wave_amplitude = bisect(
        [&](double a) {
          dram::VariationProfile t = v;
          t.spatial_wave_amplitude = a;
          const auto m = ev.model(t);
          double min_mult = 1e9;
          for (std::uint32_t i = 0; i < m.geometry().segments_per_bank; ++i)
            min_mult = std::min(min_mult, m.segment({0, 0, i}).multiplier);
          return expected_segment_entropy(m, best, ev.table, min_mult, targets.column_samples) -
                 targets.max_segment_entropy;
        },
        0.0, 0.9, 40);
  }

  CalibrationResult r;
  r.profile = v;
  const auto m = ev.model(v);
  const auto mult = ev.multipliers(m, targets.sample_segments);
  r.best_block_entropy = ev.mean_block(m, mult, best);
  r.worst_block_entropy = ev.mean_block(m, mult, worst);
  double min_mult = 1e9;
  double mean = 0.0;
  const auto all = ev.multipliers(m, m.geometry().segments_per_bank);
  for (double k : all) min_mult = std::min(min_mult, k);
  r.max_segment_entropy = expected_segment_entropy(m, best, ev.table, min_mult, targets.column_samples);
  const auto spread = ev.multipliers(m, 256);
  for (double k : spread) mean += expected_segment_entropy(m, best, ev.table, k, targets.column_samples);
  r.mean_segment_entropy = mean / spread.size();
  return r;
}

nlohmann::json to_json(const CalibrationResult& r) {
  return {{"variation", dram::to_json(r.profile)},
          {"predicted",
           {{"best_block_entropy", r.best_block_entropy},
            {"worst_block_entropy", r.worst_block_entropy},
            {"max_segment_entropy", r.max_segment_entropy},
            {"mean_segment_entropy", r.mean_segment_entropy}}}};
}

}  // namespace quac::entropy
