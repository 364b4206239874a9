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

#include "quac/common/rng.hpp"
#include "quac/dram/physics.hpp"

using namespace quac;
using namespace quac::dram;

TEST(Physics, ChargeShareDeviationFormula) {
  const ShareWeights w{3.0, 1.0, 0};
  // 0111 with Row_0 first: 3(-0.5) + 3(0.5) = 0, leaving the scaled offset.
  EXPECT_NEAR(charge_share_deviation({0, 1, 1, 1}, w, 1.2, 0.3), 1.2 * 0.3, 1e-12);
  // 1011: 3(0.5) - 0.5 + 0.5 + 0.5 = 2.
  EXPECT_NEAR(charge_share_deviation({1, 0, 1, 1}, w, 1.0, 0.0), 2.0, 1e-12);
  // Closed rows at 0.5 contribute nothing.
  EXPECT_NEAR(charge_share_deviation({1, 0.5, 0.5, 0.5}, w, 2.0, 0.0), 3.0, 1e-12);
  // The first-activated row carries w0 wherever it is.
  const ShareWeights w3{3.0, 1.0, 3};
  EXPECT_NEAR(charge_share_deviation({0, 0, 0, 1}, w3, 1.0, 0.0), 1.5 - 1.5, 1e-12);
}

TEST(Physics, ThresholdIsSymmetricAndMatchesNormalCdf) {
  for (double d : {0.0, 0.001, 0.01, 0.03, 0.1}) {
    const auto hi = sense_threshold(d, 0.014, 1.0);
    const auto lo = sense_threshold(-d, 0.014, 1.0);
    EXPECT_EQ(hi + lo, kThresholdOne) << d;
    const double p = 0.5 * std::erfc(-d / 0.014 / std::sqrt(2.0));
    EXPECT_NEAR(static_cast<double>(hi) / 0x1.0p53, p, 1e-12);
    EXPECT_NEAR(p_one(d, 0.014, 1.0), p, 1e-12);
  }
}

TEST(Physics, ExtremeDeviationsAreDeterministic) {
  EXPECT_EQ(sense_threshold(5.0, 0.014, 1.0), kThresholdOne);
  EXPECT_EQ(sense_threshold(-5.0, 0.014, 1.0), 0u);
  for (std::uint64_t i = 0; i < 1000; ++i) {
    EXPECT_EQ(sample_sense_amp(5.0, 0.014, 1.0, rng::mix64(i)), 1);
    EXPECT_EQ(sample_sense_amp(-5.0, 0.014, 1.0, rng::mix64(i)), 0);
  }
}

TEST(Physics, TemperatureFactorScalesDeviation) {
  EXPECT_LT(p_one(0.01, 0.014, 0.5), p_one(0.01, 0.014, 1.0));
  EXPECT_NEAR(p_one(0.01, 0.014, 0.5), p_one(0.005, 0.014, 1.0), 1e-15);
}

TEST(Physics, SampleFrequencyMatchesProbability) {
  const double d = 0.005;
  const double p = p_one(d, 0.014, 1.0);
  const int n = 200000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += sample_sense_amp(d, 0.014, 1.0, rng::mix64(static_cast<std::uint64_t>(i) + 17));
  EXPECT_NEAR(static_cast<double>(ones) / n, p, 4.0 * std::sqrt(p * (1 - p) / n));
}
