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

#pragma once

#include <cstdint>
#include <initializer_list>

namespace quac::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 output finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Child key of `parent` at position `index`.
constexpr std::uint64_t derive(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(parent ^ mix64(index + kGolden));
}

// Folds a tuple of coordinates into one key.
constexpr std::uint64_t key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  for (std::uint64_t v : path) h = derive(h, v);
  return h;
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

// Standard normal variate fully determined by `k` (Box-Muller, cosine branch).
double normal(std::uint64_t k) noexcept;

// Domain tags keep independent parameter streams apart.
enum class Domain : std::uint64_t {
  kOffset = 0x6F66667365740001ULL,
  kSegment = 0x7365676D656E0002ULL,
  kChip = 0x6368697000000003ULL,
  kNoise = 0x6E6F697365000004ULL,
  kExperiment = 0x6578706572000005ULL,
  kTrial = 0x747269616C000006ULL,
};

constexpr std::uint64_t tag(Domain d) noexcept { return static_cast<std::uint64_t>(d); }

// Sequential generator for places that want a plain stream.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  constexpr std::uint64_t operator()() noexcept {
    state_ += kGolden;
    return mix64(state_);
  }
  constexpr double uniform() noexcept { return to_unit((*this)()); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

 private:
  std::uint64_t state_;
};

}  // namespace quac::rng
