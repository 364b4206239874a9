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
#include <optional>
#include <vector>

#include "quac/entropy/entropy_map.hpp"

namespace quac::entropy {

struct SpatialProfile {
  std::vector<double> segment_series;
  std::optional<std::uint32_t> period;  // segments; set when the peak clears the threshold
  std::uint32_t peak_lag = 0;
  double peak_autocorrelation = 0.0;
  std::size_t best_segment = 0;
  std::vector<double> block_curve;       // cache-block entropies of the best segment
  std::vector<double> mean_block_curve;  // cache-block entropies averaged over all segments
};

// Biased sample autocorrelation at lags 0..max_lag.
std::vector<double> autocorrelation(const std::vector<double>& x, std::size_t max_lag);

// The dominant period is the highest autocorrelation peak past the first zero crossing,
// searched up to half the series length.
SpatialProfile spatial_profile(const EntropyMap& map, double peak_threshold = 0.2);

}  // namespace quac::entropy
