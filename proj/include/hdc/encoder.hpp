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

#ifndef HDC_ENCODER_HPP
#define HDC_ENCODER_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hdc/core.hpp"
#include "hdc/matrix.hpp"

namespace hdc {

/// Per-feature affine normalization fitted on the training split.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> std;

  std::size_t features() const { return mean.size(); }
  friend bool operator==(const Standardizer&, const Standardizer&) = default;
};

/// Zero-variance columns get std = 1. Requires at least two rows.
Standardizer fit_standardizer(const Matrix<double>& train_features);

struct EncoderConfig {
  std::size_t input_dim = 0;
  std::size_t dim = 10000;
  MatrixKind kind = MatrixKind::kGaussian;
  std::uint64_t seed = 0;
  bool normalize_output = true;
  double ternary_zero_probability = 1.0 / 3.0;
};

/// Fixed random projection h = ((x - mean) / std) W_enc with W_enc of shape
/// input_dim x dim, entries scaled by 1/sqrt(input_dim).
class Encoder {
 public:
  explicit Encoder(const EncoderConfig& cfg);

  /// Test hook: use an explicit projection instead of the seeded one.
  static Encoder with_matrix(const EncoderConfig& cfg, Matrix<float> projection);

  const EncoderConfig& config() const { return cfg_; }
  const Matrix<float>& projection() const { return projection_; }
  std::size_t dim() const { return cfg_.dim; }

  Hypervector<float> encode(std::span<const double> x, const Standardizer& standardizer) const;
  /// Encodes every row of `features`; rows are samples.
  Matrix<float> encode_batch(const Matrix<double>& features, const Standardizer& standardizer) const;

  static RandomMatrixSpec projection_spec(const EncoderConfig& cfg);

 private:
  Encoder(const EncoderConfig& cfg, Matrix<float> projection);
  void encode_row(std::span<const double> x, const Standardizer& standardizer, std::span<float> out,
                  std::vector<double>& centered, std::vector<double>& acc) const;

  EncoderConfig cfg_;
  Matrix<float> projection_;
};

}  // namespace hdc

#endif  // HDC_ENCODER_HPP
