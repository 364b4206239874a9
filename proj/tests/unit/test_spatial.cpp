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

#include <cmath>
#include <numbers>

#include "quac/common/rng.hpp"
#include "quac/entropy/spatial.hpp"

using namespace quac;
using namespace quac::entropy;

namespace {

EntropyMap synthetic(std::uint32_t n, double amplitude, double period, std::uint64_t seed) {
  EntropyMap m;
  m.cache_block_bits = 512;
  m.bitlines_per_row = 2048;
  rng::SplitMix64 g(seed);
  for (std::uint32_t i = 0; i < n; ++i) {
    SegmentEntropy s;
    s.addr = {0, 0, i};
    const double base = 100.0 + amplitude * std::sin(2.0 * std::numbers::pi * i / period);
    for (int b = 0; b < 4; ++b) s.block_entropy.push_back(base / 4.0 + (g.uniform() - 0.5) * 10.0);
    for (double e : s.block_entropy) s.total += e;
    m.segments.push_back(s);
  }
  return m;
}

}  // namespace

TEST(Spatial, AutocorrelationOfAConstantLagZeroIsOne) {
  const std::vector<double> x = {1, 2, 3, 4, 5, 4, 3, 2};
  const auto r = autocorrelation(x, 3);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_NEAR(r[0], 1.0, 1e-12);
  EXPECT_LT(r[3], r[1]);
}

TEST(Spatial, RecoversSinePeriod) {
  const auto p = spatial_profile(synthetic(1024, 40.0, 64.0, 1));
  ASSERT_TRUE(p.period.has_value());
  EXPECT_NEAR(*p.period, 64.0, 1.0);
  EXPECT_GT(p.peak_autocorrelation, 0.5);
  EXPECT_EQ(p.segment_series.size(), 1024u);
  EXPECT_EQ(p.block_curve.size(), 4u);
  EXPECT_EQ(p.mean_block_curve.size(), 4u);
}

TEST(Spatial, FlatNoiseHasNoPeriod) {
  const auto p = spatial_profile(synthetic(1024, 0.0, 64.0, 2));
  EXPECT_FALSE(p.period.has_value());
}
