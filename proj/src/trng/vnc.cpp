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

#include "quac/trng/vnc.hpp"

namespace quac::trng {

BitVector vnc(std::span<const std::uint8_t> bits) {
  BitVector out;
  out.reserve(bits.size() / 4);
  for (std::size_t i = 0; i + 1 < bits.size(); i += 2) {
    const bool a = bits[i] != 0;
    const bool b = bits[i + 1] != 0;
    if (a != b) out.push_back(b ? 1 : 0);
  }
  return out;
}

}  // namespace quac::trng
