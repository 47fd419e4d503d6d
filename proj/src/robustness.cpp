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

#include "hdc/robustness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "hdc/inference.hpp"
#include "hdc/random.hpp"

namespace hdc {

std::uint64_t inject_bitflips(std::span<float> values, const NoiseSpec& spec, std::uint64_t first_index) {
  const double p = spec.flip_probability;
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("inject_bitflips: probability outside [0, 1]");
  if (p == 0.0) return 0;
  const CounterRng rng(spec.seed);
  std::uint64_t flipped = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::uint64_t base = (first_index + k) * 32;
    std::uint32_t mask = 0;
    for (std::uint32_t b = 0; b < 32; ++b) {
      if (rng.uniform(base + b) < p) mask |= (std::uint32_t{1} << b);
    }
    if (mask != 0) {
      values[k] = std::bit_cast<float>(std::bit_cast<std::uint32_t>(values[k]) ^ mask);
      flipped += static_cast<std::uint64_t>(std::popcount(mask));
    }
  }
  return flipped;
}

namespace {

std::uint64_t flip_all(std::vector<std::span<float>> tensors, const NoiseSpec& spec) {
  std::uint64_t offset = 0, flipped = 0;
  for (auto t : tensors) {
    flipped += inject_bitflips(t, spec, offset);
    offset += t.size();
  }
  return flipped;
}

}  // namespace

std::uint64_t inject_bitflips(ModelParams<float>& params, const NoiseSpec& spec) {
  std::vector<std::span<float>> tensors;
  for (auto& l : params.latents) tensors.push_back(l.values());
  tensors.push_back(params.head.values());
  return flip_all(tensors, spec);
}

std::uint64_t inject_bitflips(DeployedDecomposed& model, const NoiseSpec& spec) {
  std::vector<std::span<float>> tensors;
  for (auto& l : model.bank.layers) tensors.push_back(l.values());
  tensors.push_back(model.head.values());
  return flip_all(tensors, spec);
}

std::uint64_t inject_bitflips(PrototypeTable& table, const NoiseSpec& spec) {
  return flip_all({table.prototypes.values()}, spec);
}

void quantize_model(ModelParams<float>& params, const PrecisionFormat& fmt) {
  for (auto& l : params.latents) quantize_values(l.values(), fmt);
  quantize_values(params.head.values(), fmt);
}

void quantize_model(DeployedDecomposed& model, const PrecisionFormat& fmt) {
  for (auto& l : model.bank.layers) quantize_values(l.values(), fmt);
  quantize_values(model.head.values(), fmt);
}

void quantize_model(PrototypeTable& table, const PrecisionFormat& fmt) {
  quantize_values(table.prototypes.values(), fmt);
}

std::uint64_t bitflip_seed(std::uint64_t root_seed, std::size_t p_index, std::size_t trial) {
  return derive_seed(derive_seed(root_seed, "bitflip", p_index), "trial", trial);
}

std::vector<RobustnessRow> robustness_sweep(const std::vector<SweepSubject>& subjects,
                                            std::span<const double> p_grid, std::size_t trials,
                                            std::uint64_t root_seed) {
  if (trials == 0) throw DomainError("robustness_sweep: need at least one trial");
  std::vector<RobustnessRow> rows;
  for (const auto& subject : subjects) {
    for (std::size_t pi = 0; pi < p_grid.size(); ++pi) {
      for (std::size_t t = 0; t < trials; ++t) {
        NoiseSpec spec{p_grid[pi], NoiseTarget::kModelParameters, bitflip_seed(root_seed, pi, t)};
        rows.push_back({subject.model_kind, p_grid[pi], t, subject.evaluate(spec)});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const RobustnessRow& a, const RobustnessRow& b) {
    return std::tie(a.model_kind, a.p_flip, a.trial) < std::tie(b.model_kind, b.p_flip, b.trial);
  });
  return rows;
}

std::vector<RobustnessSummary> summarize(std::span<const RobustnessRow> rows) {
  std::map<std::pair<std::string, double>, std::vector<double>> groups;
  for (const auto& r : rows) groups[{r.model_kind, r.p_flip}].push_back(r.test_accuracy);
  std::vector<RobustnessSummary> out;
  for (const auto& [key, acc] : groups) {
    RobustnessSummary s{key.first, key.second, 0.0, 0.0, acc.size()};
    for (double a : acc) s.mean_accuracy += a;
    s.mean_accuracy /= static_cast<double>(acc.size());
    for (double a : acc) s.std_accuracy += (a - s.mean_accuracy) * (a - s.mean_accuracy);
    s.std_accuracy = acc.size() > 1 ? std::sqrt(s.std_accuracy / static_cast<double>(acc.size() - 1)) : 0.0;
    out.push_back(s);
  }
  return out;
}

std::vector<std::string> monotonicity_warnings(std::span<const RobustnessSummary> summary, double tolerance) {
  std::vector<std::string> warnings;
  for (std::size_t i = 1; i < summary.size(); ++i) {
    const auto& prev = summary[i - 1];
    const auto& cur = summary[i];
    if (prev.model_kind != cur.model_kind) continue;
    if (cur.mean_accuracy > prev.mean_accuracy + tolerance) {
      std::ostringstream msg;
      msg << cur.model_kind << ": mean accuracy rises from " << prev.mean_accuracy << " at p=" << prev.p_flip
          << " to " << cur.mean_accuracy << " at p=" << cur.p_flip;
      warnings.push_back(msg.str());
    }
  }
  return warnings;
}

double deployed_accuracy(const DeployedDecomposed& model, const Matrix<float>& test_x, std::span<const int> test_y) {
  if (test_x.rows() == 0) return 0.0;
  const auto prototypes = materialize_prototypes<float>(model.bank, model.head);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_x.rows(); ++i) {
    const auto s = score_prototypes<float>(prototypes, test_x.row(i));
    correct += predict(s) == static_cast<std::size_t>(test_y[i]) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(test_x.rows());
}

SweepSubject table_subject(std::string kind, const PrototypeTable& table, const Matrix<float>& test_x,
                           std::span<const int> test_y) {
  return {std::move(kind), [&table, &test_x, test_y](const NoiseSpec& spec) {
            PrototypeTable copy = table;
            inject_bitflips(copy, spec);
            return table_accuracy(copy, test_x, test_y);
          }};
}

SweepSubject decomposed_subject(std::string kind, const DeployedDecomposed& model, const Matrix<float>& test_x,
                                std::span<const int> test_y) {
  return {std::move(kind), [&model, &test_x, test_y](const NoiseSpec& spec) {
            DeployedDecomposed copy = model;
            inject_bitflips(copy, spec);
            return deployed_accuracy(copy, test_x, test_y);
          }};
}

}  // namespace hdc
