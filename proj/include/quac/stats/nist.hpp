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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace quac::stats {

// Regularized upper incomplete gamma Q(a, x).
double igamc(double a, double x);
double normal_cdf(double z);

// Individual tests over bits stored one per byte. Each returns its p-value(s).
double monobit(std::span<const std::uint8_t> bits);
double block_frequency(std::span<const std::uint8_t> bits, std::size_t block = 128);
double runs(std::span<const std::uint8_t> bits);
double longest_run_of_ones(std::span<const std::uint8_t> bits);
std::pair<double, double> cumulative_sums(std::span<const std::uint8_t> bits);  // forward, backward
std::pair<double, double> serial(std::span<const std::uint8_t> bits, unsigned m = 16);
double approximate_entropy(std::span<const std::uint8_t> bits, unsigned m = 10);

struct TestResult {
  std::string name;
  std::vector<double> p_values;
  bool applicable = true;  // false when the input is too short for the test's parameters

  bool passed(double alpha) const;
};

struct TestReport {
  double alpha = 0.001;
  std::size_t n_bits = 0;
  bool length_limited = false;  // some tests were skipped for length
  std::vector<TestResult> tests;

  bool all_passed() const;
  const TestResult& at(const std::string& name) const;
};

inline constexpr const char* kTestNames[] = {
    "monobit", "frequency_within_block", "runs", "longest_run_ones_in_a_block",
    "cumulative_sums", "serial", "approximate_entropy"};

TestReport run_tests(std::span<const std::uint8_t> bits, double alpha = 0.001);

nlohmann::json to_json(const TestReport& r);

}  // namespace quac::stats
