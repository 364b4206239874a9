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

#include "quac/common/config_hash.hpp"

#include "quac/trng/sha256.hpp"

namespace quac {

std::string hash_json(const nlohmann::json& j) {
  const std::string text = j.dump();
  const auto digest = trng::sha256_bytes(reinterpret_cast<const std::uint8_t*>(text.data()), text.size());
  return trng::to_hex(digest).substr(0, 16);
}

}  // namespace quac
