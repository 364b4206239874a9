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

#include <filesystem>
#include <optional>
#include <span>

#include "quac/common/bits.hpp"

namespace quac::trng {

// Flat binary, MSB-first within bytes.
void write_binary(const std::filesystem::path& path, std::span<const std::uint8_t> bits);
// One '0'/'1' character per bit, as consumed by the reference NIST suite.
void write_ascii(const std::filesystem::path& path, std::span<const std::uint8_t> bits);

BitVector read_binary(const std::filesystem::path& path, std::optional<std::size_t> n_bits = std::nullopt);
BitVector read_ascii(const std::filesystem::path& path);

}  // namespace quac::trng
