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

#include <span>

#include "quac/common/bits.hpp"

namespace quac::trng {

// Von Neumann corrector: 01 -> 1, 10 -> 0, 00 and 11 dropped; an odd trailing bit is dropped.
BitVector vnc(std::span<const std::uint8_t> bits);

}  // namespace quac::trng
