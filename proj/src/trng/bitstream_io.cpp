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

#include "quac/trng/bitstream_io.hpp"

#include <fstream>
#include <iterator>

#include "quac/common/error.hpp"

namespace quac {

std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return out;
}

BitVector unpack_bits(std::span<const std::uint8_t> bytes, std::size_t n_bits) {
  if (n_bits > bytes.size() * 8) throw ArgumentError("unpack_bits: not enough bytes");
  BitVector out(n_bits);
  for (std::size_t i = 0; i < n_bits; ++i) out[i] = (bytes[i / 8] >> (7 - i % 8)) & 1u;
  return out;
}

BitVector bits_from_string(std::string_view text) {
  BitVector out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1') out.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c == ' ' || c == '\n' || c == '\r' || c == '\t') continue;
    else throw ArgumentError(std::string("invalid bit character '") + c + "'");
  }
  return out;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? '1' : '0';
  return s;
}

}  // namespace quac

namespace quac::trng {

void write_binary(const std::filesystem::path& path, std::span<const std::uint8_t> bits) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path.string());
  const auto bytes = pack_bits(bits);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_ascii(const std::filesystem::path& path, std::span<const std::uint8_t> bits) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write " + path.string());
  out << bits_to_string(bits);
}

BitVector read_binary(const std::filesystem::path& path, std::optional<std::size_t> n_bits) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return unpack_bits(bytes, n_bits.value_or(bytes.size() * 8));
}

BitVector read_ascii(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bits_from_string(text);
}

}  // namespace quac::trng
