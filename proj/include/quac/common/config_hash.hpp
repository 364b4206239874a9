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

#include <string>

#include <json.hpp>

namespace quac {

inline constexpr const char* kToolVersion = "1.0.0";

// First 16 hex digits of SHA-256 over the compact, key-sorted dump of `j`.
std::string hash_json(const nlohmann::json& j);

}  // namespace quac
