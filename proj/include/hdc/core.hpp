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

#ifndef HDC_CORE_HPP
#define HDC_CORE_HPP

// Primitive operations of the hyperdimensional space: binding, weighted
// bundling, dot products and seeded random matrices.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/matrix.hpp"
#include "hdc/random.hpp"

namespace hdc {

template <typename T>
using Hypervector = std::vector<T>;

namespace detail {
inline void require_same_length(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": length mismatch (" + std::to_string(a) + " vs " +
                         std::to_string(b) + ")");
  }
}
}  // namespace detail

/// Elementwise product into `out`; `out` may alias either input.
template <typename T>
void bind_into(std::span<const T> x, std::span<const T> y, std::span<T> out) {
  detail::require_same_length(x.size(), y.size(), "bind");
  detail::require_same_length(x.size(), out.size(), "bind");
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = x[j] * y[j];
}

template <typename T>
Hypervector<T> bind(std::span<const T> x, std::span<const T> y) {
  detail::require_same_length(x.size(), y.size(), "bind");
  Hypervector<T> out(x.size());
  bind_into<T>(x, y, out);
  return out;
}

template <typename T>
Hypervector<T> bind(const Hypervector<T>& x, const Hypervector<T>& y) {
  return bind<T>(std::span<const T>(x), std::span<const T>(y));
}

/// out[j] = sum_m weights[m] * vectors[m][j], accumulated in double.
template <typename T>
Hypervector<T> bundle_weighted(std::span<const Hypervector<T>> vectors, std::span<const double> weights) {
  if (vectors.empty()) throw DomainError("bundle_weighted: empty input");
  detail::require_same_length(vectors.size(), weights.size(), "bundle_weighted");
  const std::size_t dim = vectors.front().size();
  std::vector<double> acc(dim, 0.0);
  for (std::size_t m = 0; m < vectors.size(); ++m) {
    detail::require_same_length(vectors[m].size(), dim, "bundle_weighted");
    for (std::size_t j = 0; j < dim; ++j) acc[j] += weights[m] * static_cast<double>(vectors[m][j]);
  }
  return Hypervector<T>(acc.begin(), acc.end());
}

template <typename T>
Hypervector<T> bundle_weighted(const std::vector<Hypervector<T>>& vectors,
                               const std::vector<double>& weights) {
  return bundle_weighted<T>(std::span<const Hypervector<T>>(vectors), std::span<const double>(weights));
}

/// Inner product with 64-bit accumulators regardless of storage width.
/// Eight interleaved partial sums, combined pairwise: a fixed order that
/// the compiler can vectorize.
template <typename T>
double dot(std::span<const T> x, std::span<const T> y) {
  detail::require_same_length(x.size(), y.size(), "dot");
  double acc[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  const std::size_t n = x.size(), body = n - n % 8;
  for (std::size_t j = 0; j < body; j += 8) {
    for (std::size_t k = 0; k < 8; ++k) acc[k] += static_cast<double>(x[j + k]) * static_cast<double>(y[j + k]);
  }
  for (std::size_t j = body; j < n; ++j) acc[j - body] += static_cast<double>(x[j]) * static_cast<double>(y[j]);
  return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + ((acc[4] + acc[5]) + (acc[6] + acc[7]));
}

template <typename T>
double dot(const Hypervector<T>& x, const Hypervector<T>& y) {
  return dot<T>(std::span<const T>(x), std::span<const T>(y));
}

template <typename T>
Hypervector<T> square(std::span<const T> x) {
  return bind<T>(x, x);
}

enum class MatrixKind { kGaussian, kTernary };

std::string to_string(MatrixKind kind);
MatrixKind matrix_kind_from_string(const std::string& name);

struct RandomMatrixSpec {
  std::size_t rows = 0;
  std::size_t cols = 0;
  MatrixKind kind = MatrixKind::kGaussian;
  std::uint64_t seed = 0;
  double scale = 1.0;
  /// Probability of a zero entry for ternary matrices; +1 and -1 split the rest.
  double ternary_zero_probability = 1.0 / 3.0;
};

/// Entry (r, c) is drawn from counter r*cols + c, so the matrix is a pure
/// function of the spec.
template <typename T>
Matrix<T> generate_matrix(const RandomMatrixSpec& spec) {
  if (spec.rows == 0 || spec.cols == 0) throw DomainError("generate_matrix: zero rows or cols");
  if (spec.kind == MatrixKind::kTernary &&
      !(spec.ternary_zero_probability >= 0.0 && spec.ternary_zero_probability <= 1.0)) {
    throw DomainError("generate_matrix: ternary zero probability outside [0, 1]");
  }
  Matrix<T> out(spec.rows, spec.cols);
  const CounterRng rng(spec.seed);
  auto values = out.values();
  if (spec.kind == MatrixKind::kGaussian) {
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = static_cast<T>(rng.normal(k) * spec.scale);
  } else {
    const double zero = spec.ternary_zero_probability;
    const double neg = zero + (1.0 - zero) / 2.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const double u = rng.uniform(k);
      const double v = u < zero ? 0.0 : (u < neg ? -1.0 : 1.0);
      values[k] = static_cast<T>(v * spec.scale);
    }
  }
  return out;
}

}  // namespace hdc

#endif  // HDC_CORE_HPP
