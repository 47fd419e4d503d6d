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

// Random small model instances shared by the unit and acceptance suites.

#ifndef HDC_TESTS_FIXTURES_HPP
#define HDC_TESTS_FIXTURES_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "hdc/model.hpp"
#include "hdc/random.hpp"
#include "oracles.hpp"

namespace fixture {

template <typename T>
struct Small {
  hdc::ModelConfig cfg;
  hdc::ModelParams<T> params;
  hdc::Projectors<T> projectors;
  hdc::Matrix<T> x;  // B x D encoded inputs, unit norm
  std::vector<int> y;
};

struct Limits {
  std::size_t max_dim = 64, max_latent = 16, max_depth = 3, max_channels = 3, max_classes = 4, max_batch = 8;
};

template <typename T>
Small<T> random_small(std::uint64_t seed, const Limits& lim = {}) {
  hdc::RngStream rng(hdc::derive_seed(seed, "fixture"));
  auto pick = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng.next_below(hi - lo + 1)); };
  Small<T> s;
  s.cfg.dim = pick(4, lim.max_dim);
  s.cfg.latent_dim = pick(1, lim.max_latent);
  s.cfg.classes = pick(2, lim.max_classes);
  const std::size_t depth = pick(1, lim.max_depth);
  for (std::size_t i = 0; i < depth; ++i) s.cfg.layers.push_back(pick(1, lim.max_channels));
  s.cfg.seed = seed;
  s.projectors = hdc::make_projectors<T>(s.cfg);
  s.params = hdc::init_params<T>(s.cfg, 1.0);
  // A non-uniform head exercises every column of the head gradient.
  for (auto& w : s.params.head.values()) w = static_cast<T>(rng.next_normal() * 0.5);
  const std::size_t batch = pick(1, lim.max_batch);
  s.x = hdc::Matrix<T>(batch, s.cfg.dim);
  for (std::size_t b = 0; b < batch; ++b) {
    double norm = 0.0;
    auto row = s.x.row(b);
    for (auto& v : row) {
      v = static_cast<T>(rng.next_normal());
      norm += static_cast<double>(v) * static_cast<double>(v);
    }
    for (auto& v : row) v = static_cast<T>(static_cast<double>(v) / std::sqrt(norm));
    s.y.push_back(static_cast<int>(rng.next_below(s.cfg.classes)));
  }
  return s;
}

inline oracle::Instance to_oracle(const Small<double>& s) {
  oracle::Instance in;
  in.layers = s.cfg.layers;
  in.d = s.cfg.latent_dim;
  in.dim = s.cfg.dim;
  in.classes = s.cfg.classes;
  for (const auto& l : s.params.latents) in.latents.push_back(oracle::to_mat(l));
  for (const auto& r : s.projectors.layers) in.projectors.push_back(oracle::to_mat(r));
  in.head = oracle::to_mat(s.params.head);
  return in;
}

inline oracle::Mat rows_of(const hdc::Matrix<double>& x) { return oracle::to_mat(x); }

}  // namespace fixture

#endif  // HDC_TESTS_FIXTURES_HPP
