// Copyright 2026 The hdc-decomp Authors.
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

#ifndef HDC_RANDOM_HPP
#define HDC_RANDOM_HPP

#include <cstdint>
#include <numeric>
#include <span>
#include <string_view>
#include <vector>

namespace hdc {

// All randomness in the library is counter-based: a value is a pure function
// of (seed, counter). Matrices can therefore be regenerated in any order, and
// per-matrix seeds come from derive_seed(root, role, index).

std::uint64_t splitmix64(std::uint64_t x);

/// Per-stream seed: FNV-1a of `role`, mixed with `root` and `index`.
std::uint64_t derive_seed(std::uint64_t root, std::string_view role, std::uint64_t index = 0);

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in [0, 1) with 53 bits of resolution.
  double uniform(std::uint64_t counter) const;
  /// Standard normal via Box-Muller over counters 2k and 2k+1.
  double normal(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

/// Sequential view over a CounterRng for shuffles and ad-hoc draws.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next_bits() { return rng_.bits(counter_++); }
  double next_uniform() { return rng_.uniform(counter_++); }
  double next_normal() { return rng_.normal(counter_++); }
  /// Unbiased integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound);

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  CounterRng rng_;
  std::uint64_t counter_ = 0;
};

inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  RngStream stream(seed);
  stream.shuffle(std::span<std::size_t>(idx));
  return idx;
}

}  // namespace hdc

#endif  // HDC_RANDOM_HPP
