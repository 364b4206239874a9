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

#include <functional>
#include <map>
#include <string>

#include <json.hpp>

#include "quac/common/error.hpp"

namespace quac::common {

// Maps JSON keys to setters for one struct.
template <typename T>
class Binder {
 public:
  Binder(const char* section, T& target) : section_(section), target_(target) {}

  template <typename F>
  Binder& field(const char* name, F T::*member) {
    setters_[name] = [this, member, name](const nlohmann::json& v) {
      try {
        target_.*member = v.get<F>();
      } catch (const nlohmann::json::exception&) {
        throw ConfigError(std::string(section_) + "." + name, "wrong type");
      }
    };
    return *this;
  }

  void apply(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError(section_, "must be an object");
    for (const auto& [k, v] : j.items()) {
      auto it = setters_.find(k);
      if (it == setters_.end()) throw ConfigError(std::string(section_) + "." + k, "unknown key");
      it->second(v);
    }
  }

 private:
  const char* section_;
  T& target_;
  std::map<std::string, std::function<void(const nlohmann::json&)>> setters_;
};

}  // namespace quac::common
