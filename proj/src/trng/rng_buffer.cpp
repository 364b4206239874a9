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

#include "quac/trng/rng_buffer.hpp"

#include "quac/common/error.hpp"

namespace quac::trng {

RngBuffer::RngBuffer(std::size_t capacity_bits, double refill_threshold, EmptyPolicy policy)
    : capacity_words_(capacity_bits / kWordBits), refill_threshold_(refill_threshold), policy_(policy) {
  if (capacity_words_ == 0 || capacity_bits % kWordBits != 0)
    throw ConfigError("buffer.capacity_bits", "must be a positive multiple of 256");
  if (!(refill_threshold >= 0.0 && refill_threshold <= 1.0))
    throw ConfigError("buffer.refill_threshold", "must lie in [0, 1]");
}

std::size_t RngBuffer::fill_bits() const {
  std::lock_guard lock(mu_);
  return words_.size() * kWordBits;
}

bool RngBuffer::needs_refill() const {
  std::lock_guard lock(mu_);
  return static_cast<double>(words_.size()) < refill_threshold_ * capacity_words_;
}

bool RngBuffer::push(const Word256& w) {
  {
    std::lock_guard lock(mu_);
    if (words_.size() >= capacity_words_) return false;
    words_.push_back(w);
  }
  cv_.notify_one();
  return true;
}

Word256 RngBuffer::pop() {
  std::unique_lock lock(mu_);
  if (words_.empty()) {
    if (policy_ == EmptyPolicy::kError) throw DomainError("random number buffer is empty");
    cv_.wait(lock, [&] { return !words_.empty() || closed_; });
    if (words_.empty()) throw DomainError("random number buffer closed while empty");
  }
  Word256 w = words_.front();
  words_.pop_front();
  return w;
}

std::optional<Word256> RngBuffer::try_pop() {
  std::lock_guard lock(mu_);
  if (words_.empty()) return std::nullopt;
  Word256 w = words_.front();
  words_.pop_front();
  return w;
}

void RngBuffer::close() {
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

}  // namespace quac::trng
