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

#include "quac/stats/population.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <ostream>
#include <iomanip>

#include "quac/common/error.hpp"

namespace quac::stats {

double population_threshold(std::size_t k, double alpha_pop) {
  if (k == 0) throw ArgumentError("population size must be >= 1");
  return (1.0 - alpha_pop) - 3.0 * std::sqrt(alpha_pop * (1.0 - alpha_pop) / static_cast<double>(k));
}

double uniformity_p_value(std::span<const double> p_values) {
  if (p_values.empty()) return 0.0;
  std::array<double, 10> bins{};
  for (double p : p_values) bins[std::min<std::size_t>(9, static_cast<std::size_t>(p * 10.0))] += 1.0;
  const double e = p_values.size() / 10.0;
  double chi = 0.0;
  for (double f : bins) chi += (f - e) * (f - e) / e;
  return igamc(4.5, chi / 2.0);
}

PopulationVerdict population_pass(std::span<const TestReport> reports, double alpha_pop) {
  if (reports.size() < 2) throw ArgumentError("population_pass: need at least 2 reports");
  PopulationVerdict v;
  v.alpha_pop = alpha_pop;
  v.k = reports.size();
  v.passed = true;
  for (const auto& proto : reports.front().tests) {
    PopulationEntry e;
    e.name = proto.name;
    std::vector<double> all;
    double passing_sum = 0.0;
    std::size_t passing_n = 0;
    for (const auto& r : reports) {
      const auto& t = r.at(proto.name);
      if (!t.applicable) continue;
      ++e.sequences;
      const bool ok = t.passed(r.alpha);
      e.passed += ok;
      for (double p : t.p_values) {
        all.push_back(p);
        if (ok) {
          passing_sum += p;
          ++passing_n;
        }
      }
    }
    if (e.sequences == 0) continue;
    e.fraction = static_cast<double>(e.passed) / e.sequences;
    const double threshold = population_threshold(e.sequences, alpha_pop);
    e.ok = e.fraction >= threshold;
    for (double p : all) e.mean_p += p;
    e.mean_p /= all.size();
    e.mean_p_passing = passing_n ? passing_sum / passing_n : 0.0;
    e.uniformity_p = uniformity_p_value(all);
    v.passed = v.passed && e.ok;
    v.tests.push_back(e);
  }
  v.threshold = population_threshold(v.k, alpha_pop);
  return v;
}

nlohmann::json to_json(const PopulationVerdict& v) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& e : v.tests)
    tests.push_back({{"name", e.name},
                     {"sequences", e.sequences},
                     {"passed", e.passed},
                     {"fraction", e.fraction},
                     {"ok", e.ok},
                     {"mean_p", e.mean_p},
                     {"mean_p_passing", e.mean_p_passing},
                     {"uniformity_p", e.uniformity_p}});
  return {{"alpha_pop", v.alpha_pop}, {"k", v.k}, {"threshold", v.threshold}, {"passed", v.passed}, {"tests", tests}};
}

void write_table_csv(const PopulationVerdict& v, std::ostream& out) {
  out << "test,mean_p_value,mean_p_value_passing,pass_fraction,threshold,pass\n" << std::setprecision(6);
  for (const auto& e : v.tests)
    out << e.name << ',' << e.mean_p << ',' << e.mean_p_passing << ',' << e.fraction << ','
        << population_threshold(e.sequences, v.alpha_pop) << ',' << (e.ok ? "true" : "false") << '\n';
}

}  // namespace quac::stats
