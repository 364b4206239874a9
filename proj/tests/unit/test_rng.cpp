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
#include <set>

#include "quac/common/rng.hpp"

using namespace quac::rng;

TEST(Rng, SplitMix64MatchesReferenceSequence) {
  SplitMix64 g(0);
  EXPECT_EQ(g(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(g(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(g(), 0x06C45D188009454FULL);
}

TEST(Rng, KeysAreDeterministicAndPathSensitive) {
  EXPECT_EQ(key(7, {1, 2, 3}), key(7, {1, 2, 3}));
  EXPECT_NE(key(7, {1, 2, 3}), key(7, {1, 3, 2}));
  EXPECT_NE(key(7, {1, 2, 3}), key(8, {1, 2, 3}));
  EXPECT_NE(key(7, {1, 2}), key(7, {1, 2, 0}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive(42, i));
  EXPECT_EQ(seen.size(), 10000u);
}

TEST(Rng, UnitIntervalBounds) {
  EXPECT_EQ(to_unit(0), 0.0);
  EXPECT_LT(to_unit(~std::uint64_t{0}), 1.0);
}

TEST(Rng, NormalMoments) {
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = normal(key(3, {static_cast<std::uint64_t>(i)}));
    s += z;
    s2 += z * z;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  EXPECT_NEAR(mean, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(var, 1.0, 0.02);
}
