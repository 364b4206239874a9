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
#include <string>

#include <json.hpp>

#include "quac/dram/types.hpp"

namespace quac::dram {

struct DeviceConfig {
  DramGeometry geometry;
  TimingParams timings;
  VariationProfile variation;
};

nlohmann::json to_json(const DramGeometry& g);
nlohmann::json to_json(const TimingParams& t);
nlohmann::json to_json(const VariationProfile& v);
nlohmann::json to_json(const DeviceConfig& c);

// Missing keys keep their defaults; unknown keys and type mismatches raise ConfigError.
void apply_json(const nlohmann::json& j, DramGeometry& g);
void apply_json(const nlohmann::json& j, TimingParams& t);
void apply_json(const nlohmann::json& j, VariationProfile& v);
// Reads the "geometry", "timings" and "variation" sections; other top-level keys are ignored.
void apply_json(const nlohmann::json& j, DeviceConfig& c);

DeviceConfig load_device_config(const std::filesystem::path& path);

std::string config_hash(const DramGeometry& g, const TimingParams& t, const VariationProfile& v);

}  // namespace quac::dram
