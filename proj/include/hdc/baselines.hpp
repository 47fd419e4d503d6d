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

#ifndef HDC_BASELINES_HPP
#define HDC_BASELINES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdc/matrix.hpp"
#include "hdc/model.hpp"

namespace hdc {

/// Conventional table with one dense prototype per class (C x D).
struct PrototypeTable {
  Matrix<float> prototypes;

  std::size_t classes() const { return prototypes.rows(); }
  std::size_t dim() const { return prototypes.cols(); }
  std::vector<double> scores(std::span<const float> h) const;
  std::size_t predict(std::span<const float> h) const;
};

struct TableBuild {
  PrototypeTable table;
  /// Classes without any training sample (their prototype is zero).
  std::vector<std::size_t> empty_classes;
};

/// prototype[c] = sum of encoded samples labelled c.
TableBuild build_prototype_table(const Matrix<float>& encoded, std::span<const int> labels, std::size_t classes);

struct RefineConfig {
  std::size_t epochs = 200;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
};

/// Iterative refinement: for a misclassified sample (prediction by dot
/// product), prototype[y] += lr (1 - cos_y) h and prototype[yhat] -= lr (1 - cos_yhat) h.
/// Samples are visited one at a time in a fresh shuffle each epoch.
PrototypeTable onlinehd_refine(PrototypeTable table, const Matrix<float>& encoded, std::span<const int> labels,
                               const RefineConfig& cfg);

/// Dimension-wise mask shared by all classes.
struct SparseMask {
  std::vector<std::uint8_t> keep;  // length D
  std::vector<std::size_t> retained;  // sorted retained dimensions
  double budget = 1.0;

  double retained_fraction() const {
    return keep.empty() ? 0.0 : static_cast<double>(retained.size()) / static_cast<double>(keep.size());
  }
};

/// Matched-budget feature-axis reduction of a prototype table ("SparseHD-style").
struct SparseTable {
  PrototypeTable table;
  SparseMask mask;

  std::vector<double> scores(std::span<const float> h) const;
  std::size_t predict(std::span<const float> h) const;
};

/// Keeps the floor(m * D) dimensions with the largest summed |prototype| over
/// classes (ties to the lower dimension index) and zeroes the rest.
SparseTable sparsify_table(const PrototypeTable& table, double budget);

double budget_of(const ModelConfig& cfg);
double budget_of(const PrototypeTable& table);
double budget_of(const SparseTable& sparse);

double table_accuracy(const PrototypeTable& table, const Matrix<float>& encoded, std::span<const int> labels);
double table_accuracy(const SparseTable& table, const Matrix<float>& encoded, std::span<const int> labels);

}  // namespace hdc

#endif  // HDC_BASELINES_HPP
