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

#include "hdc/encoder.hpp"

#include <cmath>
#include <string>

namespace hdc {

Standardizer fit_standardizer(const Matrix<double>& train_features) {
  const std::size_t n = train_features.rows();
  const std::size_t d = train_features.cols();
  if (n < 2) throw DomainError("fit_standardizer: need at least two training rows");
  Standardizer s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += train_features(i, j);
  }
  for (double& m : s.mean) m /= static_cast<double>(n);
  // Population variance, matching the usual standard-score convention.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double c = train_features(i, j) - s.mean[j];
      s.std[j] += c * c;
    }
  }
  for (double& v : s.std) {
    v = std::sqrt(v / static_cast<double>(n));
    if (!(v > 1e-12)) v = 1.0;
  }
  return s;
}

RandomMatrixSpec Encoder::projection_spec(const EncoderConfig& cfg) {
  RandomMatrixSpec spec;
  spec.rows = cfg.input_dim;
  spec.cols = cfg.dim;
  spec.kind = cfg.kind;
  spec.seed = cfg.seed;
  spec.scale = cfg.input_dim > 0 ? 1.0 / std::sqrt(static_cast<double>(cfg.input_dim)) : 1.0;
  spec.ternary_zero_probability = cfg.ternary_zero_probability;
  return spec;
}

Encoder::Encoder(const EncoderConfig& cfg) : Encoder(cfg, generate_matrix<float>(projection_spec(cfg))) {}

Encoder::Encoder(const EncoderConfig& cfg, Matrix<float> projection)
    : cfg_(cfg), projection_(std::move(projection)) {
  if (cfg_.dim == 0) throw DomainError("encoder: dim must be >= 1");
  if (projection_.rows() != cfg_.input_dim || projection_.cols() != cfg_.dim) {
    throw DimensionError("encoder: projection must be input_dim x dim");
  }
}

Encoder Encoder::with_matrix(const EncoderConfig& cfg, Matrix<float> projection) {
  return Encoder(cfg, std::move(projection));
}

void Encoder::encode_row(std::span<const double> x, const Standardizer& standardizer,
                         std::span<float> out, std::vector<double>& centered,
                         std::vector<double>& acc) const {
  const std::size_t d_in = cfg_.input_dim;
  if (x.size() != d_in) {
    throw DimensionError("encode: expected " + std::to_string(d_in) + " features, got " +
                         std::to_string(x.size()));
  }
  if (standardizer.features() != d_in) throw DimensionError("encode: standardizer width mismatch");
  centered.resize(d_in);
  for (std::size_t j = 0; j < d_in; ++j) {
    if (std::isnan(x[j])) throw InputError("encode: NaN in feature " + std::to_string(j));
    centered[j] = (x[j] - standardizer.mean[j]) / standardizer.std[j];
  }
  acc.assign(cfg_.dim, 0.0);
  for (std::size_t j = 0; j < d_in; ++j) {
    const double c = centered[j];
    if (c == 0.0) continue;
    const auto w = projection_.row(j);
    for (std::size_t k = 0; k < cfg_.dim; ++k) acc[k] += c * static_cast<double>(w[k]);
  }
  if (cfg_.normalize_output) {
    double norm = 0.0;
    for (double v : acc) norm += v * v;
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (double& v : acc) v /= norm;
    }
  }
  for (std::size_t k = 0; k < cfg_.dim; ++k) out[k] = static_cast<float>(acc[k]);
}

Hypervector<float> Encoder::encode(std::span<const double> x, const Standardizer& standardizer) const {
  Hypervector<float> out(cfg_.dim);
  std::vector<double> centered, acc;
  encode_row(x, standardizer, out, centered, acc);
  return out;
}

Matrix<float> Encoder::encode_batch(const Matrix<double>& features,
                                    const Standardizer& standardizer) const {
  Matrix<float> out(features.rows(), cfg_.dim);
  std::vector<double> centered, acc;
  for (std::size_t i = 0; i < features.rows(); ++i) {
    encode_row(features.row(i), standardizer, out.row(i), centered, acc);
  }
  return out;
}

}  // namespace hdc
