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

#include "hdc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hdc/budget.hpp"
#include "hdc/core.hpp"
#include "hdc/random.hpp"

namespace hdc {

std::vector<double> PrototypeTable::scores(std::span<const float> h) const {
  std::vector<double> s(classes());
  for (std::size_t c = 0; c < classes(); ++c) s[c] = dot<float>(prototypes.row(c), h);
  return s;
}

std::size_t PrototypeTable::predict(std::span<const float> h) const { return hdc::predict(scores(h)); }

TableBuild build_prototype_table(const Matrix<float>& encoded, std::span<const int> labels, std::size_t classes) {
  if (labels.size() != encoded.rows()) throw DimensionError("build_prototype_table: labels/rows mismatch");
  if (classes == 0) throw DomainError("build_prototype_table: zero classes");
  Matrix<double> acc(classes, encoded.cols());
  std::vector<std::size_t> counts(classes, 0);
  for (std::size_t i = 0; i < encoded.rows(); ++i) {
    const int y = labels[i];
    if (y < 0 || static_cast<std::size_t>(y) >= classes) {
      throw DomainError("build_prototype_table: label out of range at row " + std::to_string(i));
    }
    auto dst = acc.row(static_cast<std::size_t>(y));
    const auto h = encoded.row(i);
    for (std::size_t j = 0; j < h.size(); ++j) dst[j] += static_cast<double>(h[j]);
    ++counts[static_cast<std::size_t>(y)];
  }
  TableBuild out;
  out.table.prototypes = acc.cast<float>();
  for (std::size_t c = 0; c < classes; ++c) {
    if (counts[c] == 0) out.empty_classes.push_back(c);
  }
  return out;
}

namespace {

double norm(std::span<const float> v) { return std::sqrt(dot<float>(v, v)); }

double cosine(double dot_value, double a, double b) {
  return (a > 0.0 && b > 0.0) ? dot_value / (a * b) : 0.0;
}

}  // namespace

PrototypeTable onlinehd_refine(PrototypeTable table, const Matrix<float>& encoded, std::span<const int> labels,
                               const RefineConfig& cfg) {
  if (labels.size() != encoded.rows()) throw DimensionError("onlinehd_refine: labels/rows mismatch");
  if (encoded.rows() > 0 && encoded.cols() != table.dim()) throw DimensionError("onlinehd_refine: dim mismatch");
  const std::size_t classes = table.classes();
  std::vector<double> proto_norm(classes);
  for (std::size_t c = 0; c < classes; ++c) proto_norm[c] = norm(table.prototypes.row(c));

  auto apply = [&](std::size_t c, double step, std::span<const float> h) {
    auto p = table.prototypes.row(c);
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = static_cast<float>(p[j] + step * h[j]);
    proto_norm[c] = norm(p);
  };

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto order = shuffled_indices(encoded.rows(), derive_seed(cfg.seed, "onlinehd", epoch));
    for (std::size_t i : order) {
      const auto h = encoded.row(i);
      const auto y = static_cast<std::size_t>(labels[i]);
      const auto s = table.scores(h);
      const std::size_t yhat = hdc::predict(s);
      if (yhat == y) continue;
      const double hn = norm(h);
      const double sim_y = cosine(s[y], proto_norm[y], hn);
      const double sim_hat = cosine(s[yhat], proto_norm[yhat], hn);
      apply(y, cfg.learning_rate * (1.0 - sim_y), h);
      apply(yhat, -cfg.learning_rate * (1.0 - sim_hat), h);
    }
  }
  return table;
}

std::vector<double> SparseTable::scores(std::span<const float> h) const {
  std::vector<double> s(table.classes(), 0.0);
  for (std::size_t c = 0; c < table.classes(); ++c) {
    const auto p = table.prototypes.row(c);
    double acc = 0.0;
    for (std::size_t j : mask.retained) acc += static_cast<double>(p[j]) * static_cast<double>(h[j]);
    s[c] = acc;
  }
  return s;
}

std::size_t SparseTable::predict(std::span<const float> h) const { return hdc::predict(scores(h)); }

SparseTable sparsify_table(const PrototypeTable& table, double budget) {
  if (!(budget > 0.0 && budget <= 1.0)) throw DomainError("sparsify_table: budget must be in (0, 1]");
  const std::size_t dim = table.dim();
  const auto keep_count = static_cast<std::size_t>(std::floor(budget * static_cast<double>(dim)));
  if (keep_count == 0) throw DomainError("sparsify_table: budget retains zero dimensions");
  std::vector<double> magnitude(dim, 0.0);
  for (std::size_t c = 0; c < table.classes(); ++c) {
    const auto p = table.prototypes.row(c);
    for (std::size_t j = 0; j < dim; ++j) magnitude[j] += std::fabs(static_cast<double>(p[j]));
  }
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return magnitude[a] > magnitude[b]; });
  SparseTable out;
  out.table = table;
  out.mask.budget = budget;
  out.mask.keep.assign(dim, 0);
  out.mask.retained.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep_count));
  std::sort(out.mask.retained.begin(), out.mask.retained.end());
  for (std::size_t j : out.mask.retained) out.mask.keep[j] = 1;
  for (std::size_t c = 0; c < table.classes(); ++c) {
    auto p = out.table.prototypes.row(c);
    for (std::size_t j = 0; j < dim; ++j) {
      if (!out.mask.keep[j]) p[j] = 0.0f;
    }
  }
  return out;
}

double budget_of(const ModelConfig& cfg) {
  return footprint(cfg.classes, cfg.dim, cfg.layers);
}

double budget_of(const PrototypeTable&) { return 1.0; }

double budget_of(const SparseTable& sparse) { return sparse.mask.retained_fraction(); }

double table_accuracy(const PrototypeTable& table, const Matrix<float>& encoded, std::span<const int> labels) {
  if (encoded.rows() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < encoded.rows(); ++i) {
    correct += table.predict(encoded.row(i)) == static_cast<std::size_t>(labels[i]) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(encoded.rows());
}

double table_accuracy(const SparseTable& table, const Matrix<float>& encoded, std::span<const int> labels) {
  if (encoded.rows() == 0) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < encoded.rows(); ++i) {
    correct += table.predict(encoded.row(i)) == static_cast<std::size_t>(labels[i]) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(encoded.rows());
}

}  // namespace hdc
