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

#include "quac/stats/nist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "quac/common/error.hpp"

namespace quac::stats {

double igamc(double a, double x) {
  if (x <= 0.0) return 1.0;
  if (!std::isfinite(x)) return 0.0;
  return std::clamp(boost::math::gamma_q(a, x), 0.0, 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace {

void require_bits(std::span<const std::uint8_t> bits, std::size_t min, const char* test) {
  if (bits.size() < min)
    throw ArgumentError(std::string(test) + ": needs at least " + std::to_string(min) + " bits");
}

// Circular overlapping counts of every m-bit pattern.
std::vector<std::uint64_t> circular_counts(std::span<const std::uint8_t> bits, unsigned m) {
  const std::size_t n = bits.size();
  std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
  const std::uint32_t mask = (1u << m) - 1u;
  std::uint32_t w = 0;
  for (unsigned i = 0; i < m - 1; ++i) w = (w << 1) | bits[i % n];
  for (std::size_t i = 0; i < n; ++i) {
    w = ((w << 1) | bits[(i + m - 1) % n]) & mask;
    ++counts[w];
  }
  return counts;
}

// Counts of (m-1)-bit patterns from m-bit circular counts.
std::vector<std::uint64_t> fold(const std::vector<std::uint64_t>& c) {
  std::vector<std::uint64_t> out(c.size() / 2, 0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i >> 1] += c[i];
  return out;
}

double psi_sq(const std::vector<std::uint64_t>& c, std::size_t n) {
  if (c.size() <= 1) return 0.0;
  double s = 0.0;
  for (auto v : c) s += static_cast<double>(v) * static_cast<double>(v);
  return s * static_cast<double>(c.size()) / n - static_cast<double>(n);
}

}  // namespace

double monobit(std::span<const std::uint8_t> bits) {
  require_bits(bits, 1, "monobit");
  long long s = 0;
  for (auto b : bits) s += b ? 1 : -1;
  const double s_obs = std::abs(static_cast<double>(s)) / std::sqrt(static_cast<double>(bits.size()));
  return std::erfc(s_obs / std::numbers::sqrt2);
}

double block_frequency(std::span<const std::uint8_t> bits, std::size_t block) {
  require_bits(bits, block, "block frequency");
  const std::size_t n_blocks = bits.size() / block;
  double chi = 0.0;
  for (std::size_t i = 0; i < n_blocks; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < block; ++j) ones += bits[i * block + j];
    const double pi = static_cast<double>(ones) / block - 0.5;
    chi += pi * pi;
  }
  chi *= 4.0 * block;
  return igamc(n_blocks / 2.0, chi / 2.0);
}

double runs(std::span<const std::uint8_t> bits) {
  require_bits(bits, 2, "runs");
  const double n = static_cast<double>(bits.size());
  std::size_t ones = 0;
  for (auto b : bits) ones += b;
  const double pi = ones / n;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return 0.0;
  std::size_t v = 1;
  for (std::size_t i = 1; i < bits.size(); ++i) v += bits[i] != bits[i - 1];
  const double num = std::abs(v - 2.0 * n * pi * (1.0 - pi));
  const double den = 2.0 * std::sqrt(2.0 * n) * pi * (1.0 - pi);
  return std::erfc(num / den);
}

double longest_run_of_ones(std::span<const std::uint8_t> bits) {
  require_bits(bits, 128, "longest run");
  const std::size_t n = bits.size();
  std::size_t m;
  unsigned v_lo;
  std::vector<double> pi;
  if (n < 6272) {
    m = 8;
    v_lo = 1;
    pi = {0.21484375, 0.3671875, 0.23046875, 0.1875};
  } else if (n < 750000) {
    m = 128;
    v_lo = 4;
    pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
  } else {
    m = 10000;
    v_lo = 10;
    pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
  }
  const std::size_t k = pi.size() - 1;
  const std::size_t n_blocks = n / m;
  std::vector<double> nu(pi.size(), 0.0);
  for (std::size_t i = 0; i < n_blocks; ++i) {
    unsigned longest = 0, run = 0;
    for (std::size_t j = 0; j < m; ++j) {
      run = bits[i * m + j] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    const std::size_t cls = longest <= v_lo ? 0 : std::min<std::size_t>(longest - v_lo, k);
    nu[cls] += 1.0;
  }
  double chi = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double e = n_blocks * pi[i];
    chi += (nu[i] - e) * (nu[i] - e) / e;
  }
  return igamc(k / 2.0, chi / 2.0);
}

namespace {

double cusum_p(long long n, long long z) {
  if (z == 0) return 1.0;
  const double sn = std::sqrt(static_cast<double>(n));
  double sum1 = 0.0;
  for (long long k = (-n / z + 1) / 4; k <= (n / z - 1) / 4; ++k)
    sum1 += normal_cdf((4.0 * k + 1.0) * z / sn) - normal_cdf((4.0 * k - 1.0) * z / sn);
  double sum2 = 0.0;
  for (long long k = (-n / z - 3) / 4; k <= (n / z - 1) / 4; ++k)
    sum2 += normal_cdf((4.0 * k + 3.0) * z / sn) - normal_cdf((4.0 * k + 1.0) * z / sn);
  return std::clamp(1.0 - sum1 + sum2, 0.0, 1.0);
}

}  // namespace

std::pair<double, double> cumulative_sums(std::span<const std::uint8_t> bits) {
  require_bits(bits, 1, "cumulative sums");
  long long s = 0, fwd = 0;
  for (auto b : bits) {
    s += b ? 1 : -1;
    fwd = std::max(fwd, std::llabs(s));
  }
  long long r = 0, bwd = 0;
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    r += *it ? 1 : -1;
    bwd = std::max(bwd, std::llabs(r));
  }
  const auto n = static_cast<long long>(bits.size());
  return {cusum_p(n, fwd), cusum_p(n, bwd)};
}

std::pair<double, double> serial(std::span<const std::uint8_t> bits, unsigned m) {
  if (m < 3 || m > 24) throw ArgumentError("serial: m must lie in [3, 24]");
  require_bits(bits, m, "serial");
  const std::size_t n = bits.size();
  const auto c0 = circular_counts(bits, m);
  const auto c1 = fold(c0);
  const auto c2 = fold(c1);
  const double p0 = psi_sq(c0, n), p1 = psi_sq(c1, n), p2 = psi_sq(c2, n);
  const double d1 = p0 - p1;
  const double d2 = p0 - 2.0 * p1 + p2;
  return {igamc(std::ldexp(1.0, static_cast<int>(m) - 2), d1 / 2.0),
          igamc(std::ldexp(1.0, static_cast<int>(m) - 3), d2 / 2.0)};
}

double approximate_entropy(std::span<const std::uint8_t> bits, unsigned m) {
  if (m < 1 || m > 24) throw ArgumentError("approximate entropy: m must lie in [1, 24]");
  require_bits(bits, m + 1, "approximate entropy");
  const std::size_t n = bits.size();
  const auto c1 = circular_counts(bits, m + 1);
  const auto c0 = fold(c1);
  auto phi = [n](const std::vector<std::uint64_t>& c) {
    double s = 0.0;
    for (auto v : c)
      if (v) {
        const double p = static_cast<double>(v) / n;
        s += p * std::log(p);
      }
    return s;
  };
  const double ap_en = phi(c0) - phi(c1);
  const double chi = 2.0 * n * (std::numbers::ln2 - ap_en);
  return igamc(std::ldexp(1.0, static_cast<int>(m) - 1), chi / 2.0);
}

bool TestResult::passed(double alpha) const {
  if (!applicable || p_values.empty()) return false;
  return std::all_of(p_values.begin(), p_values.end(), [alpha](double p) { return p > alpha; });
}

bool TestReport::all_passed() const {
  return std::all_of(tests.begin(), tests.end(),
                     [this](const TestResult& t) { return !t.applicable || t.passed(alpha); });
}

const TestResult& TestReport::at(const std::string& name) const {
  for (const auto& t : tests)
    if (t.name == name) return t;
  throw ArgumentError("no test named " + name);
}

TestReport run_tests(std::span<const std::uint8_t> bits, double alpha) {
  if (bits.empty()) throw ArgumentError("run_tests: empty input");
  TestReport r;
  r.alpha = alpha;
  r.n_bits = bits.size();
  const std::size_t n = bits.size();
  const auto log2n = static_cast<unsigned>(std::floor(std::log2(static_cast<double>(n))));

  auto add = [&](const char* name, bool ok, auto&& fn) {
    TestResult t{name, {}, ok};
    if (ok) t.p_values = fn();
    else r.length_limited = true;
    r.tests.push_back(std::move(t));
  };
  add("monobit", n >= 100, [&] { return std::vector<double>{monobit(bits)}; });
  add("frequency_within_block", n >= 128, [&] { return std::vector<double>{block_frequency(bits, 128)}; });
  add("runs", n >= 100, [&] { return std::vector<double>{runs(bits)}; });
  add("longest_run_ones_in_a_block", n >= 128, [&] { return std::vector<double>{longest_run_of_ones(bits)}; });
  add("cumulative_sums", n >= 100, [&] {
    auto [f, b] = cumulative_sums(bits);
    return std::vector<double>{f, b};
  });
  add("serial", log2n >= 16 + 3, [&] {
    auto [a, b] = serial(bits, 16);
    return std::vector<double>{a, b};
  });
  add("approximate_entropy", log2n >= 10 + 6, [&] { return std::vector<double>{approximate_entropy(bits, 10)}; });
  return r;
}

nlohmann::json to_json(const TestReport& r) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : r.tests)
    tests.push_back({{"name", t.name}, {"applicable", t.applicable}, {"p_values", t.p_values},
                     {"pass", t.applicable && t.passed(r.alpha)}});
  return {{"alpha", r.alpha}, {"n_bits", r.n_bits}, {"length_limited", r.length_limited}, {"tests", tests}};
}

}  // namespace quac::stats
