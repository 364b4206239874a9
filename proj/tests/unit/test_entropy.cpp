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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>

#include "quac/dram/physics.hpp"
#include "quac/engine/engine.hpp"
#include "quac/entropy/characterize.hpp"
#include "quac/entropy/entropy_map.hpp"
#include "test_util.hpp"

using namespace quac;
using namespace quac::entropy;

TEST(Entropy, BinaryEntropyMatchesHighPrecision) {
  using big = boost::multiprecision::cpp_dec_float_50;
  for (double p : {0.11, 0.3, 0.5, 0.999}) {
    const big bp(p);
    const big h = -(bp * log(bp) + (1 - bp) * log(1 - bp)) / log(big(2));
    EXPECT_NEAR(binary_entropy(p), h.convert_to<double>(), 1e-15) << p;
  }
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_DOUBLE_EQ(bitline_entropy(500, 1000), 1.0);
  EXPECT_DOUBLE_EQ(bitline_entropy(110, 1000), quac::testing::h2(0.11));
}

namespace {

// Standard error of the plug-in entropy of n Bernoulli(p) trials, second order.
double plugin_se(double p, double n) {
  const double v = p * (1 - p) / n;
  const double d1 = std::log2((1 - p) / p);
  const double d2 = -1.0 / (p * (1 - p) * std::log(2.0));
  return std::sqrt(d1 * d1 * v + 0.5 * d2 * d2 * v * v);
}

double plugin_mean(double p, double n) { return quac::testing::h2(p) - 1.0 / (2.0 * n * std::log(2.0)); }

}  // namespace

TEST(Entropy, SampledEstimatesFallWithinThreeStandardErrors) {
  const std::uint32_t n = 1000;
  const int lines = 200;
  for (double p : {0.1, 0.3, 0.5}) {
    const auto thr = static_cast<std::uint64_t>(p * 0x1.0p53);
    const double se = plugin_se(p, n);
    int within = 0;
    double sum = 0.0;
    for (std::uint64_t line = 0; line < lines; ++line) {
      std::uint32_t k = 0;
      for (std::uint64_t t = 0; t < n; ++t)
        k += dram::sample_with_threshold(thr, rng::key(1234, {line, t, static_cast<std::uint64_t>(p * 10)}));
      const double h = bitline_entropy(k, n);
      sum += h;
      if (std::abs(h - plugin_mean(p, n)) <= 3.0 * se) ++within;
    }
    EXPECT_NEAR(sum / lines, plugin_mean(p, n), 3.0 * se / std::sqrt(lines)) << "p=" << p;
    EXPECT_NEAR(sum / lines, quac::testing::h2(p), 3.0 * se) << "p=" << p;
    EXPECT_GE(within, 0.95 * lines) << "p=" << p;
  }
}

TEST(Entropy, CharacterizedBitlinesMatchTheirModelProbability) {
  const auto model = quac::testing::small_model(16, 4096, 3);
  const auto pat = dram::DataPattern::parse("0111");
  CharacterizeOptions opt;
  opt.trials = 1000;
  opt.keep_bitlines = true;
  const dram::SegmentAddress seg{0, 0, 5};
  const auto map = characterize(*model, pat, {seg}, opt);
  const auto sp = model->segment(seg);
  const std::array<double, 4> cells{0, 1, 1, 1};
  int checked = 0, within = 0;
  for (std::uint32_t b = 0; b < 4096; ++b) {
    const double p = static_cast<double>(model->threshold(sp, b, cells, 0, opt.temperature_c)) / 0x1.0p53;
    if (p < 0.05 || p > 0.95) continue;
    ++checked;
    if (std::abs(map.segments[0].bitline_entropy[b] - plugin_mean(p, opt.trials)) <= 3.0 * plugin_se(p, opt.trials))
      ++within;
  }
  ASSERT_GT(checked, 20);
  EXPECT_GE(within, 0.97 * checked);
}

TEST(Entropy, CharacterizeEqualsRepeatedQuac) {
  const auto model = quac::testing::small_model(16, 4096, 4);
  const auto pat = dram::DataPattern::parse("0111");
  CharacterizeOptions opt;
  opt.trials = 40;
  opt.seed = 77;
  const dram::SegmentAddress seg{1, 2, 9};
  const auto counts = ones_counts(*model, pat, seg, opt);

  dram::Device dev(model);
  dev.set_temperature(opt.temperature_c);
  std::vector<std::uint32_t> loop(4096, 0);
  for (std::uint32_t t = 0; t < opt.trials; ++t) {
    const auto bits = engine::run_quac(dev, seg, pat, 2.5, 2.5, trial_seed(opt.seed, t));
    for (std::size_t b = 0; b < bits.size(); ++b) loop[b] += bits[b];
  }
  EXPECT_EQ(counts, loop);
}

TEST(Entropy, CharacterizeIsThreadCountInvariant) {
  const auto model = quac::testing::small_model(16, 4096, 5);
  const auto pat = dram::DataPattern::parse("0111");
  const auto segs = bank_segments(*model, 0, 1, 0, 8);
  CharacterizeOptions a;
  a.trials = 50;
  auto b = a;
  b.threads = 4;
  const auto ma = characterize(*model, pat, segs, a);
  const auto mb = characterize(*model, pat, segs, b);
  ASSERT_EQ(ma.segments.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(ma.segments[i].addr, mb.segments[i].addr);
    EXPECT_EQ(ma.segments[i].block_entropy, mb.segments[i].block_entropy);
  }
}

TEST(Entropy, BlockEntropiesSumToSegmentTotal) {
  const auto model = quac::testing::small_model(16, 4096, 6);
  CharacterizeOptions opt;
  opt.trials = 100;
  const auto map = characterize(*model, dram::DataPattern::parse("0111"), bank_segments(*model, 0, 0, 0, 4), opt);
  for (const auto& s : map.segments) {
    ASSERT_EQ(s.block_entropy.size(), 8u);
    double sum = 0.0;
    for (double e : s.block_entropy) sum += e;
    EXPECT_NEAR(sum, s.total, 1e-9);
  }
  EXPECT_GT(map.max_segment_entropy(), 0.0);
  EXPECT_LE(map.mean_segment_entropy(), map.max_segment_entropy());
}

TEST(Entropy, EntropyMapJsonRoundTrips) {
  const auto model = quac::testing::small_model(16, 4096, 6);
  CharacterizeOptions opt;
  opt.trials = 20;
  const auto map = characterize(*model, dram::DataPattern::parse("1000"), bank_segments(*model, 2, 3, 4, 3), opt);
  const auto back = entropy_map_from_json(to_json(map));
  ASSERT_EQ(back.segments.size(), map.segments.size());
  EXPECT_EQ(back.pattern, "1000");
  EXPECT_EQ(back.segments[1].addr, map.segments[1].addr);
  EXPECT_EQ(back.segments[1].block_entropy, map.segments[1].block_entropy);
}
