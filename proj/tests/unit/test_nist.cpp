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

#include "quac/common/bits.hpp"
#include "quac/common/rng.hpp"
#include "quac/stats/nist.hpp"

using namespace quac;
using namespace quac::stats;

namespace {

// Worked examples published with the NIST statistical test suite.
const BitVector kEps100 = bits_from_string(
    "1100100100001111110110101010001000100001011010001100001000110100110001001100011001100010100010111000");
const BitVector kEps128 = bits_from_string(
    "11001100000101010110110001001100111000000000001001001101010100010001001111010110100000001101011111001100111001101101100010110010");

}  // namespace

TEST(Nist, SpecialFunctions) {
  EXPECT_NEAR(igamc(1.0, 1.0), std::exp(-1.0), 1e-14);
  EXPECT_NEAR(igamc(0.5, 2.0), std::erfc(std::sqrt(2.0)), 1e-14);
  EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(normal_cdf(1.96), 0.9750021, 1e-6);
}

TEST(Nist, Monobit) {
  EXPECT_NEAR(monobit(bits_from_string("1011010101")), 0.527089, 1e-6);
  EXPECT_NEAR(monobit(kEps100), 0.109599, 1e-6);
}

TEST(Nist, BlockFrequency) {
  EXPECT_NEAR(block_frequency(bits_from_string("0110011010"), 3), 0.801252, 1e-6);
  EXPECT_NEAR(block_frequency(kEps100, 10), 0.706438, 1e-6);
}

TEST(Nist, Runs) {
  EXPECT_NEAR(runs(bits_from_string("1001101011")), 0.147232, 1e-6);
  EXPECT_NEAR(runs(kEps100), 0.500798, 1e-6);
}

TEST(Nist, RunsPrerequisiteFailsOnBiasedInput) {
  BitVector biased(100, 1);
  for (int i = 0; i < 10; ++i) biased[i * 10] = 0;
  EXPECT_EQ(runs(biased), 0.0);
}

TEST(Nist, LongestRunOfOnes) { EXPECT_NEAR(longest_run_of_ones(kEps128), 0.180609, 1e-6); }

TEST(Nist, CumulativeSums) {
  EXPECT_NEAR(cumulative_sums(bits_from_string("1011010111")).first, 0.4116588, 1e-6);
  const auto [fwd, bwd] = cumulative_sums(kEps100);
  EXPECT_NEAR(fwd, 0.219194, 1e-6);
  EXPECT_NEAR(bwd, 0.114866, 1e-6);
}

TEST(Nist, Serial) {
  const auto [p1, p2] = serial(bits_from_string("0011011101"), 3);
  EXPECT_NEAR(p1, 0.808792, 1e-6);
  EXPECT_NEAR(p2, 0.670320, 1e-6);
}

TEST(Nist, ApproximateEntropy) {
  EXPECT_NEAR(approximate_entropy(bits_from_string("0100110101"), 3), 0.261961, 1e-6);
}

TEST(Nist, RandomMegabitPassesEverything) {
  rng::SplitMix64 g(2024);
  BitVector bits(1 << 20);
  for (auto& b : bits) b = g() >> 63;
  const auto r = run_tests(bits);
  EXPECT_FALSE(r.length_limited);
  ASSERT_EQ(r.tests.size(), std::size(kTestNames));
  for (const auto& t : r.tests) {
    EXPECT_TRUE(t.applicable) << t.name;
    EXPECT_TRUE(t.passed(0.001)) << t.name;
  }
  EXPECT_EQ(r.at("serial").p_values.size(), 2u);
  EXPECT_EQ(r.at("cumulative_sums").p_values.size(), 2u);
}

TEST(Nist, ConstantInputFails) {
  const BitVector zeros(1 << 16, 0);
  const auto r = run_tests(zeros);
  EXPECT_FALSE(r.all_passed());
  EXPECT_FALSE(r.at("monobit").passed(0.001));
}

TEST(Nist, ShortInputIsFlagged) {
  rng::SplitMix64 g(1);
  BitVector bits(1000);
  for (auto& b : bits) b = g() >> 63;
  EXPECT_TRUE(run_tests(bits).length_limited);
}
