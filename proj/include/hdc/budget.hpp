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

#ifndef HDC_BUDGET_HPP
#define HDC_BUDGET_HPP

// Memory-budget accounting relative to a dense C x D prototype table.

#include <cstddef>
#include <span>
#include <vector>

namespace hdc {

/// Normalized footprint (C * prod L_i + (sum L_i) * D) / (C * D). Not clamped.
double footprint(std::size_t classes, std::size_t dim, std::span<const std::size_t> layers);

/// Trainable parameters sum_i L_i * d + C * M.
std::size_t trainable_params(std::size_t classes, std::span<const std::size_t> layers, std::size_t latent_dim);

/// 1 - trainable_params / (C * D). Negative when the decomposition is larger.
double trainable_param_savings(std::span<const std::size_t> layers, std::size_t latent_dim, std::size_t classes,
                               std::size_t dim);

struct BudgetQuery {
  double m_target = 0.5;
  std::size_t classes = 2;
  std::size_t dim = 10000;
  std::size_t min_layers = 1;
  std::size_t max_layers = 3;
  std::size_t max_channels = 5;
  std::vector<std::size_t> latent_dims{4096};
};

struct BudgetReport {
  std::vector<std::size_t> layers;
  std::size_t latent_dim = 0;
  double m = 0.0;
  std::size_t paths = 0;
  std::size_t trainable_params = 0;
  double savings = 0.0;
};

/// Every ordered channel tuple with footprint <= m_target, crossed with the
/// latent sizes. Sorted by descending M, then ascending footprint, then
/// lexicographic tuple, then latent size.
std::vector<BudgetReport> enumerate_configs(const BudgetQuery& query);

/// The first tuple in enumeration order (largest M, then smallest
/// footprint). Returns an empty vector when nothing fits.
std::vector<std::size_t> select_layers(const BudgetQuery& query);

}  // namespace hdc

#endif  // HDC_BUDGET_HPP
