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

#include <bit>
#include <string>

#include "quac/common/bits.hpp"
#include "quac/common/rng.hpp"
#include "quac/trng/sha256.hpp"

using namespace quac;
using namespace quac::trng;

namespace {

std::string hex_of(const std::string& msg) {
  return to_hex(sha256_bytes(reinterpret_cast<const std::uint8_t*>(msg.data()), msg.size()));
}

}  // namespace

TEST(Sha256, StandardVectors) {
  EXPECT_EQ(hex_of(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(hex_of("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(hex_of("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST(Sha256, BitInputIsPackedMsbFirst) {
  const BitVector bits = bits_from_string("011000010110001001100011");  // "abc"
  EXPECT_EQ(to_hex(sha256_digest(bits)), hex_of("abc"));
}

TEST(Sha256, Avalanche) {
  rng::SplitMix64 g(5);
  double total = 0.0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    BitVector bits(512);
    for (auto& b : bits) b = g() & 1u;
    const auto a = sha256_digest(bits);
    bits[g() % 512] ^= 1u;
    const auto b = sha256_digest(bits);
    int d = 0;
    for (std::size_t i = 0; i < 32; ++i) d += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
    EXPECT_NEAR(d, 128, 40);
    total += d;
  }
  EXPECT_NEAR(total / trials, 128.0, 1.0);
}
