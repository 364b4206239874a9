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

#include "quac/trng/sha256.hpp"

#include <openssl/evp.h>

#include <memory>
#include <stdexcept>

#include "quac/common/bits.hpp"

namespace quac::trng {

Word256 sha256_bytes(const std::uint8_t* data, std::size_t size) {
  Word256 out{};
  unsigned int len = 0;
  if (EVP_Digest(data, size, out.data(), &len, EVP_sha256(), nullptr) != 1 || len != out.size())
    throw std::runtime_error("SHA-256 digest failed");
  return out;
}

Word256 sha256_digest(std::span<const std::uint8_t> bits) {
  const auto bytes = pack_bits(bits);
  return sha256_bytes(bytes.data(), bytes.size());
}

std::string to_hex(const Word256& w) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (auto b : w) {
    s.push_back(kHex[b >> 4]);
    s.push_back(kHex[b & 15]);
  }
  return s;
}

}  // namespace quac::trng
