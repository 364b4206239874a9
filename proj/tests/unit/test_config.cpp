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

#include "quac/common/config_hash.hpp"
#include "quac/common/error.hpp"
#include "quac/dram/config_io.hpp"

using namespace quac;
using namespace quac::dram;

TEST(Config, DefaultsRoundTrip) {
  DeviceConfig c;
  c.geometry.segments_per_bank = 128;
  c.timings.tRP = 14.0;
  c.variation.master_seed = 99;
  DeviceConfig back;
  apply_json(to_json(c), back);
  EXPECT_EQ(to_json(back), to_json(c));
  EXPECT_EQ(config_hash(back.geometry, back.timings, back.variation),
            config_hash(c.geometry, c.timings, c.variation));
}

TEST(Config, UnknownKeyNamesTheField) {
  DeviceConfig c;
  try {
    apply_json(nlohmann::json{{"timings", {{"tXYZ", 1.0}}}}, c);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "timings.tXYZ");
  }
}

TEST(Config, TypeMismatchIsRejected) {
  DeviceConfig c;
  EXPECT_THROW(apply_json(nlohmann::json{{"geometry", {{"bank_groups", "four"}}}}, c), ConfigError);
}

TEST(Config, InvalidValuesAreRejected) {
  TimingParams t;
  t.tRP = -1.0;
  EXPECT_THROW(t.validate(), ConfigError);
  EXPECT_THROW(DataPattern::parse("01x1"), ConfigError);
  EXPECT_THROW(DataPattern::parse("011"), ConfigError);
}

TEST(Config, HashIsOrderIndependent) {
  const auto a = nlohmann::json::parse(R"({"a":1,"b":[1,2]})");
  const auto b = nlohmann::json::parse(R"({"b":[1,2],"a":1})");
  EXPECT_EQ(hash_json(a), hash_json(b));
  EXPECT_EQ(hash_json(a).size(), 16u);
  EXPECT_NE(hash_json(a), hash_json(nlohmann::json::parse(R"({"a":2,"b":[1,2]})")));
}

TEST(Config, PatternsEnumerate) {
  const auto all = DataPattern::all();
  ASSERT_EQ(all.size(), 16u);
  EXPECT_EQ(all.front().str(), "0000");
  EXPECT_EQ(all.back().str(), "1111");
}
