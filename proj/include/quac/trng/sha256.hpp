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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace quac::trng {

using Word256 = std::array<std::uint8_t, 32>;

Word256 sha256_bytes(const std::uint8_t* data, std::size_t size);
// Message given as one bit per element, packed MSB-first before hashing.
Word256 sha256_digest(std::span<const std::uint8_t> bits);

std::string to_hex(const Word256& w);

}  // namespace quac::trng
