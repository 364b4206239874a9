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

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <mutex>
#include <optional>

#include "quac/trng/sha256.hpp"

namespace quac::trng {

enum class EmptyPolicy { kBlock, kError };

// FIFO of 256-bit words shared by one producer and one consumer.
class RngBuffer {
 public:
  static constexpr std::size_t kWordBits = 256;

  explicit RngBuffer(std::size_t capacity_bits = 16 * 1024, double refill_threshold = 0.5,
                     EmptyPolicy policy = EmptyPolicy::kError);

  std::size_t capacity_bits() const { return capacity_words_ * kWordBits; }
  std::size_t fill_bits() const;
  bool needs_refill() const;
  double refill_threshold() const { return refill_threshold_; }

  // Returns false when the buffer is full.
  bool push(const Word256& w);
  // Blocks or throws DomainError when empty, per policy.
  Word256 pop();
  std::optional<Word256> try_pop();
  // Wakes blocked consumers; pop() on an empty closed buffer throws.
  void close();

 private:
  std::size_t capacity_words_;
  double refill_threshold_;
  EmptyPolicy policy_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Word256> words_;
  bool closed_ = false;
};

}  // namespace quac::trng
