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

#include "quac/entropy/spatial.hpp"

#include "quac/common/error.hpp"

namespace quac::entropy {

std::vector<double> autocorrelation(const std::vector<double>& x, std::size_t max_lag) {
  const std::size_t n = x.size();
  std::vector<double> r(std::min(max_lag, n ? n - 1 : 0) + 1, 0.0);
  if (n == 0) return r;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  if (var == 0.0) return r;
  for (std::size_t k = 0; k < r.size(); ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) s += (x[i] - mean) * (x[i + k] - mean);
    r[k] = s / var;
  }
  return r;
}

SpatialProfile spatial_profile(const EntropyMap& map, double peak_threshold) {
  if (map.segments.size() < 2) throw ArgumentError("spatial_profile: map must cover at least 2 segments");
  SpatialProfile p;
  for (const auto& s : map.segments) p.segment_series.push_back(s.total);

  const auto r = autocorrelation(p.segment_series, p.segment_series.size() / 2);
  std::size_t k = 1;
  while (k < r.size() && r[k] > 0.0) ++k;
  for (std::size_t lag = k; lag < r.size(); ++lag) {
    if (r[lag] > p.peak_autocorrelation) {
      p.peak_autocorrelation = r[lag];
      p.peak_lag = static_cast<std::uint32_t>(lag);
    }
  }
  if (p.peak_lag > 0 && p.peak_autocorrelation >= peak_threshold) p.period = p.peak_lag;

  p.best_segment = map.best_segment();
  p.block_curve = map.segments[p.best_segment].block_entropy;
  p.mean_block_curve.assign(p.block_curve.size(), 0.0);
  for (const auto& s : map.segments)
    for (std::size_t b = 0; b < s.block_entropy.size() && b < p.mean_block_curve.size(); ++b)
      p.mean_block_curve[b] += s.block_entropy[b];
  for (double& v : p.mean_block_curve) v /= map.segments.size();
  return p;
}

}  // namespace quac::entropy
