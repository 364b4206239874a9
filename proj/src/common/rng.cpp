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

#include "quac/common/rng.hpp"

#include <cmath>
#include <numbers>

namespace quac::rng {

double normal(std::uint64_t k) noexcept {
  const double u1 = (static_cast<double>(mix64(k) >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = to_unit(mix64(k ^ 0xA5A5A5A5DEADBEEFULL));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace quac::rng
