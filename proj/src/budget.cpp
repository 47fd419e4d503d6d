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

#include "hdc/budget.hpp"

#include <algorithm>
#include <tuple>

#include "hdc/error.hpp"

namespace hdc {

namespace {

std::size_t product(std::span<const std::size_t> layers) {
  std::size_t m = 1;
  for (std::size_t l : layers) m *= l;
  return m;
}

std::size_t sum(std::span<const std::size_t> layers) {
  std::size_t s = 0;
  for (std::size_t l : layers) s += l;
  return s;
}

void validate(const BudgetQuery& q) {
  if (!(q.m_target > 0.0)) throw ConfigError("budget: m_target must be > 0");
  if (q.classes == 0 || q.dim == 0) throw ConfigError("budget: classes and dim must be >= 1");
  if (q.min_layers < 1 || q.min_layers > q.max_layers) throw ConfigError("budget: bad layer range");
  if (q.max_channels < 1) throw ConfigError("budget: max_channels must be >= 1");
}

// Odometer over all tuples of the given depth with entries in [1, max_channels].
template <typename Fn>
void for_each_tuple(std::size_t depth, std::size_t max_channels, Fn&& fn) {
  std::vector<std::size_t> t(depth, 1);
  while (true) {
    fn(t);
    std::size_t i = depth;
    while (i > 0) {
      --i;
      if (++t[i] <= max_channels) break;
      t[i] = 1;
      if (i == 0) return;
    }
  }
}

}  // namespace

double footprint(std::size_t classes, std::size_t dim, std::span<const std::size_t> layers) {
  const double c = static_cast<double>(classes);
  const double d = static_cast<double>(dim);
  return (c * static_cast<double>(product(layers)) + static_cast<double>(sum(layers)) * d) / (c * d);
}

std::size_t trainable_params(std::size_t classes, std::span<const std::size_t> layers, std::size_t latent_dim) {
  return sum(layers) * latent_dim + classes * product(layers);
}

double trainable_param_savings(std::span<const std::size_t> layers, std::size_t latent_dim, std::size_t classes,
                               std::size_t dim) {
  return 1.0 - static_cast<double>(trainable_params(classes, layers, latent_dim)) /
                   (static_cast<double>(classes) * static_cast<double>(dim));
}

std::vector<BudgetReport> enumerate_configs(const BudgetQuery& query) {
  validate(query);
  std::vector<BudgetReport> out;
  for (std::size_t depth = query.min_layers; depth <= query.max_layers; ++depth) {
    for_each_tuple(depth, query.max_channels, [&](const std::vector<std::size_t>& layers) {
      const double m = footprint(query.classes, query.dim, layers);
      if (m > query.m_target) return;
      for (std::size_t d : query.latent_dims) {
        BudgetReport r;
        r.layers = layers;
        r.latent_dim = d;
        r.m = m;
        r.paths = product(layers);
        r.trainable_params = trainable_params(query.classes, layers, d);
        r.savings = trainable_param_savings(layers, d, query.classes, query.dim);
        out.push_back(std::move(r));
      }
    });
  }
  std::stable_sort(out.begin(), out.end(), [](const BudgetReport& a, const BudgetReport& b) {
    if (a.paths != b.paths) return a.paths > b.paths;
    if (a.m != b.m) return a.m < b.m;
    if (a.layers != b.layers) return a.layers < b.layers;
    return a.latent_dim < b.latent_dim;
  });
  return out;
}

std::vector<std::size_t> select_layers(const BudgetQuery& query) {
  validate(query);
  // Head of the enumeration order: most paths, then the smaller footprint,
  // then the lexicographically smallest tuple.
  std::vector<std::size_t> best;
  std::size_t best_paths = 0;
  double best_m = 0.0;
  for (std::size_t depth = query.min_layers; depth <= query.max_layers; ++depth) {
    for_each_tuple(depth, query.max_channels, [&](const std::vector<std::size_t>& layers) {
      const double m = footprint(query.classes, query.dim, layers);
      if (m > query.m_target) return;
      const std::size_t paths = product(layers);
      const bool better = best.empty() || paths > best_paths ||
                          (paths == best_paths && (m < best_m || (m == best_m && layers < best)));
      if (better) {
        best = layers;
        best_paths = paths;
        best_m = m;
      }
    });
  }
  return best;
}

}  // namespace hdc
