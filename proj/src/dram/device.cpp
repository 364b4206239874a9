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

#include "quac/dram/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quac/common/error.hpp"
#include "quac/common/rng.hpp"
#include "quac/dram/config_io.hpp"
#include "quac/dram/physics.hpp"

namespace quac::dram {

using rng::Domain;

DeviceModel::DeviceModel(DramGeometry geometry, TimingParams timings, VariationProfile variation)
    : geometry_(geometry), timings_(timings), variation_(variation) {
  geometry_.validate();
  timings_.validate();
  variation_.validate();
  chip_signs_.resize(variation_.chips);
  for (std::uint32_t c = 0; c < variation_.chips; ++c) {
    const double u = rng::to_unit(rng::key(variation_.master_seed, {rng::tag(Domain::kChip), c}));
    chip_signs_[c] = u < variation_.trend_sign_fraction ? 1 : -1;
  }
  fingerprint_ = config_hash(geometry_, timings_, variation_);
}

void DeviceModel::check_bank(std::uint32_t bank_group, std::uint32_t bank) const {
  if (bank_group >= geometry_.bank_groups)
    throw ArgumentError("bank_group " + std::to_string(bank_group) + " out of range");
  if (bank >= geometry_.banks_per_group)
    throw ArgumentError("bank " + std::to_string(bank) + " out of range");
}

void DeviceModel::check_segment(const SegmentAddress& addr) const {
  check_bank(addr.bank_group, addr.bank);
  if (addr.segment_index >= geometry_.segments_per_bank)
    throw ArgumentError("segment " + std::to_string(addr.segment_index) + " out of range");
}

SegmentParams DeviceModel::segment(const SegmentAddress& addr) const {
  check_segment(addr);
  const auto& v = variation_;
  const std::uint64_t base = rng::key(v.master_seed, {addr.bank_group, addr.bank, addr.segment_index});
  SegmentParams p;
  p.addr = addr;
  const double jitter = v.segment_weight_jitter_sigma > 0.0
                            ? v.segment_weight_jitter_sigma * rng::normal(rng::derive(base, rng::tag(Domain::kSegment)))
                            : 0.0;
  const double wave = v.spatial_wave_amplitude *
                      std::sin(2.0 * std::numbers::pi * addr.segment_index / v.spatial_wave_period);
  p.multiplier = std::max(0.05, 1.0 + jitter + wave);
  p.offset_key = rng::derive(base, rng::tag(Domain::kOffset));
  p.noise_key = rng::derive(base, rng::tag(Domain::kNoise));
  return p;
}

double DeviceModel::column_profile(std::uint32_t bitline) const {
  const double x = (bitline + 0.5) / geometry_.bitlines_per_row - variation_.column_profile_peak;
  return 1.0 + variation_.column_profile_curvature * x * x;
}

double DeviceModel::bitline_offset(const SegmentParams& seg, std::uint32_t bitline) const {
  if (variation_.sa_offset_sigma == 0.0) return 0.0;
  return variation_.sa_offset_sigma * column_profile(bitline) *
         rng::normal(rng::derive(seg.offset_key, bitline));
}

double DeviceModel::temperature_factor(std::uint32_t bitline, double temperature_c) const {
  const double k = variation_.temp_coefficient_per_chip * chip_sign(chip_of(bitline));
  return std::max(0.05, 1.0 - k * (temperature_c - variation_.reference_temperature));
}

std::uint64_t DeviceModel::noise_key(const SegmentParams& seg, std::uint32_t bitline) const {
  return rng::derive(seg.noise_key, bitline);
}

std::uint64_t DeviceModel::experiment_key(std::uint64_t experiment_seed) {
  return rng::mix64(rng::derive(experiment_seed, rng::tag(Domain::kExperiment)));
}

std::uint64_t DeviceModel::threshold(const SegmentParams& seg, std::uint32_t bitline,
                                     const std::array<double, 4>& cells, std::uint32_t first_row,
                                     double temperature_c) const {
  const ShareWeights w{variation_.first_row_weight, variation_.later_row_weight, first_row};
  const double dev = charge_share_deviation(cells, w, seg.multiplier, bitline_offset(seg, bitline));
  return sense_threshold(dev, variation_.thermal_noise_sigma, temperature_factor(bitline, temperature_c));
}

Device::Device(std::shared_ptr<const DeviceModel> model)
    : model_(std::move(model)),
      banks_(model_->geometry().banks()),
      temperature_c_(model_->variation().reference_temperature) {}

BankState& Device::bank(std::uint32_t bank_group, std::uint32_t bank) {
  model_->check_bank(bank_group, bank);
  return banks_[bank_group * model_->geometry().banks_per_group + bank];
}

const BankState& Device::bank(std::uint32_t bank_group, std::uint32_t bank) const {
  model_->check_bank(bank_group, bank);
  return banks_[bank_group * model_->geometry().banks_per_group + bank];
}

Device build_device(const DramGeometry& geometry, const TimingParams& timings,
                    const VariationProfile& variation) {
  return Device(std::make_shared<const DeviceModel>(geometry, timings, variation));
}

float cell_charge(const BankState& bank, std::uint32_t row, std::uint32_t bitline) {
  auto it = bank.cells.find(row);
  return it == bank.cells.end() ? 0.0f : it->second[bitline];
}

}  // namespace quac::dram
