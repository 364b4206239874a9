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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace quac {

// Bit sequences are stored one bit per byte (values 0/1).
using BitVector = std::vector<std::uint8_t>;

// Packs MSB-first; a trailing partial byte is zero-padded.
std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits);
BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits);

BitVector bits_from_string(std::string_view text);
std::string bits_to_string(std::span<const std::uint8_t> bits);

}  // namespace quac
