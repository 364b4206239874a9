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

#include "quac/dram/config_io.hpp"

#include <fstream>

#include "quac/common/config_hash.hpp"
#include "quac/common/error.hpp"
#include "quac/common/json_binder.hpp"

namespace quac::dram {

using nlohmann::json;

using common::Binder;

json to_json(const DramGeometry& g) {
  return {{"bank_groups", g.bank_groups},
          {"banks_per_group", g.banks_per_group},
          {"subarrays_per_bank", g.subarrays_per_bank},
          {"segments_per_bank", g.segments_per_bank},
          {"rows_per_segment", g.rows_per_segment},
          {"rows_per_bank", g.rows_per_bank},
          {"bitlines_per_row", g.bitlines_per_row},
          {"cache_block_bits", g.cache_block_bits}};
}

json to_json(const TimingParams& t) {
  return {{"tRAS", t.tRAS},   {"tRP", t.tRP},       {"tRCD", t.tRCD},
          {"tRRD_S", t.tRRD_S}, {"tRRD_L", t.tRRD_L}, {"CL", t.CL},
          {"transfer_rate", t.transfer_rate}, {"burst_length", t.burst_length},
          {"command_slot", t.command_slot}, {"CWL", t.CWL}, {"tWR", t.tWR},
          {"tRTP", t.tRTP}, {"tCCD_L", t.tCCD_L}, {"tFAW", t.tFAW}};
}

json to_json(const VariationProfile& v) {
  return {{"master_seed", v.master_seed},
          {"sa_offset_sigma", v.sa_offset_sigma},
          {"thermal_noise_sigma", v.thermal_noise_sigma},
          {"first_row_weight", v.first_row_weight},
          {"later_row_weight", v.later_row_weight},
          {"segment_weight_jitter_sigma", v.segment_weight_jitter_sigma},
          {"spatial_wave_amplitude", v.spatial_wave_amplitude},
          {"spatial_wave_period", v.spatial_wave_period},
          {"temp_coefficient_per_chip", v.temp_coefficient_per_chip},
          {"trend_sign_fraction", v.trend_sign_fraction},
          {"reference_temperature", v.reference_temperature},
          {"chips", v.chips},
          {"column_profile_curvature", v.column_profile_curvature},
          {"column_profile_peak", v.column_profile_peak}};
}

json to_json(const DeviceConfig& c) {
  return {{"geometry", to_json(c.geometry)},
          {"timings", to_json(c.timings)},
          {"variation", to_json(c.variation)}};
}

void apply_json(const json& j, DramGeometry& g) {
  Binder<DramGeometry>("geometry", g)
      .field("bank_groups", &DramGeometry::bank_groups)
      .field("banks_per_group", &DramGeometry::banks_per_group)
      .field("subarrays_per_bank", &DramGeometry::subarrays_per_bank)
      .field("segments_per_bank", &DramGeometry::segments_per_bank)
      .field("rows_per_segment", &DramGeometry::rows_per_segment)
      .field("rows_per_bank", &DramGeometry::rows_per_bank)
      .field("bitlines_per_row", &DramGeometry::bitlines_per_row)
      .field("cache_block_bits", &DramGeometry::cache_block_bits)
      .apply(j);
}

void apply_json(const json& j, TimingParams& t) {
  Binder<TimingParams>("timings", t)
      .field("tRAS", &TimingParams::tRAS)
      .field("tRP", &TimingParams::tRP)
      .field("tRCD", &TimingParams::tRCD)
      .field("tRRD_S", &TimingParams::tRRD_S)
      .field("tRRD_L", &TimingParams::tRRD_L)
      .field("CL", &TimingParams::CL)
      .field("transfer_rate", &TimingParams::transfer_rate)
      .field("burst_length", &TimingParams::burst_length)
      .field("command_slot", &TimingParams::command_slot)
      .field("CWL", &TimingParams::CWL)
      .field("tWR", &TimingParams::tWR)
      .field("tRTP", &TimingParams::tRTP)
      .field("tCCD_L", &TimingParams::tCCD_L)
      .field("tFAW", &TimingParams::tFAW)
      .apply(j);
}

void apply_json(const json& j, VariationProfile& v) {
  Binder<VariationProfile>("variation", v)
      .field("master_seed", &VariationProfile::master_seed)
      .field("sa_offset_sigma", &VariationProfile::sa_offset_sigma)
      .field("thermal_noise_sigma", &VariationProfile::thermal_noise_sigma)
      .field("first_row_weight", &VariationProfile::first_row_weight)
      .field("later_row_weight", &VariationProfile::later_row_weight)
      .field("segment_weight_jitter_sigma", &VariationProfile::segment_weight_jitter_sigma)
      .field("spatial_wave_amplitude", &VariationProfile::spatial_wave_amplitude)
      .field("spatial_wave_period", &VariationProfile::spatial_wave_period)
      .field("temp_coefficient_per_chip", &VariationProfile::temp_coefficient_per_chip)
      .field("trend_sign_fraction", &VariationProfile::trend_sign_fraction)
      .field("reference_temperature", &VariationProfile::reference_temperature)
      .field("chips", &VariationProfile::chips)
      .field("column_profile_curvature", &VariationProfile::column_profile_curvature)
      .field("column_profile_peak", &VariationProfile::column_profile_peak)
      .apply(j);
}

void apply_json(const json& j, DeviceConfig& c) {
  if (!j.is_object()) throw ConfigError("config", "top level must be an object");
  if (j.contains("geometry")) apply_json(j.at("geometry"), c.geometry);
  if (j.contains("timings")) apply_json(j.at("timings"), c.timings);
  if (j.contains("variation")) apply_json(j.at("variation"), c.variation);
}

DeviceConfig load_device_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("parse error: ") + e.what());
  }
  DeviceConfig c;
  apply_json(j, c);
  c.geometry.validate();
  c.timings.validate();
  c.variation.validate();
  return c;
}

std::string config_hash(const DramGeometry& g, const TimingParams& t, const VariationProfile& v) {
  return quac::hash_json(to_json(DeviceConfig{g, t, v}));
}

}  // namespace quac::dram
