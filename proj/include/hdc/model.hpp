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

#ifndef HDC_MODEL_HPP
#define HDC_MODEL_HPP

// Decomposed classifier. Layer i owns L_i latents a(i, l) in R^d; each is
// expanded by a frozen projector R(i) (d x D) into a channel A(i, l) in R^D.
// A path picks one channel per layer; its hypervector is
//   Z_m(h) = h * A(1, m_1) * ... * A(N, m_N)   (elementwise)
// and class c scores s_c = < sum_m W[c, m] Z_m(h), h >.
//
// Paths are enumerated in row-major mixed-radix order: layer N varies
// fastest. Head column m corresponds to that flat index.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hdc/core.hpp"
#include "hdc/error.hpp"
#include "hdc/matrix.hpp"
#include "hdc/random.hpp"

namespace hdc {

struct ModelConfig {
  std::vector<std::size_t> layers;  // L_i, one entry per layer
  std::size_t latent_dim = 4096;
  std::size_t dim = 10000;
  std::size_t classes = 2;
  std::uint64_t seed = 0;

  std::size_t depth() const { return layers.size(); }
  /// M = prod L_i.
  std::size_t paths() const;
  /// L_tot = sum L_i.
  std::size_t total_channels() const;
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

/// Seeds for the frozen projectors; derived from the model seed so a model
/// file only needs to carry `ModelConfig::seed`.
std::uint64_t projector_seed(const ModelConfig& cfg, std::size_t layer);
std::uint64_t latent_seed(const ModelConfig& cfg, std::size_t layer);

/// Mixed-radix path enumeration with the last layer varying fastest.
class PathIndexer {
 public:
  explicit PathIndexer(std::vector<std::size_t> radices);

  std::size_t count() const { return count_; }
  std::size_t depth() const { return radices_.size(); }
  std::size_t encode(std::span<const std::size_t> path) const;
  void decode(std::size_t flat, std::span<std::size_t> path) const;
  std::vector<std::size_t> decode(std::size_t flat) const;
  /// Advances `path` to the next flat index; returns false after the last.
  bool next(std::span<std::size_t> path) const;

 private:
  std::vector<std::size_t> radices_;
  std::size_t count_ = 1;
};

template <typename T>
struct ModelParams {
  std::vector<Matrix<T>> latents;  // per layer: L_i x d
  Matrix<T> head;                  // C x M

  std::size_t parameter_count() const {
    std::size_t n = head.size();
    for (const auto& l : latents) n += l.size();
    return n;
  }
};

/// Frozen per-layer projectors R(i), each d x D. Regenerated from seeds.
template <typename T>
struct Projectors {
  std::vector<Matrix<T>> layers;
};

/// Materialized channels A(i, l): per layer an L_i x D matrix.
template <typename T>
struct ChannelBank {
  std::vector<Matrix<T>> layers;

  std::size_t depth() const { return layers.size(); }
  std::size_t dim() const { return layers.empty() ? 0 : layers.front().cols(); }
  std::vector<std::size_t> radices() const {
    std::vector<std::size_t> r;
    for (const auto& l : layers) r.push_back(l.rows());
    return r;
  }
  std::size_t paths() const {
    std::size_t m = 1;
    for (const auto& l : layers) m *= l.rows();
    return m;
  }
};

RandomMatrixSpec projector_spec(const ModelConfig& cfg, std::size_t layer);

template <typename T>
Projectors<T> make_projectors(const ModelConfig& cfg) {
  cfg.validate();
  Projectors<T> p;
  for (std::size_t i = 0; i < cfg.depth(); ++i) p.layers.push_back(generate_matrix<T>(projector_spec(cfg, i)));
  return p;
}

/// Latents ~ N(0, sigma^2) from per-layer seeded streams; head entries 1/M.
template <typename T>
ModelParams<T> init_params(const ModelConfig& cfg, double sigma) {
  cfg.validate();
  if (!(sigma > 0.0)) throw DomainError("init_params: sigma must be > 0");
  ModelParams<T> p;
  for (std::size_t i = 0; i < cfg.depth(); ++i) {
    RandomMatrixSpec spec{cfg.layers[i], cfg.latent_dim, MatrixKind::kGaussian, latent_seed(cfg, i), sigma};
    p.latents.push_back(generate_matrix<T>(spec));
  }
  const std::size_t m = cfg.paths();
  p.head = Matrix<T>(cfg.classes, m, static_cast<T>(1.0 / static_cast<double>(m)));
  return p;
}

template <typename T>
void check_params(const ModelConfig& cfg, const ModelParams<T>& params) {
  if (params.latents.size() != cfg.depth()) throw DimensionError("params: layer count mismatch");
  for (std::size_t i = 0; i < cfg.depth(); ++i) {
    if (params.latents[i].rows() != cfg.layers[i] || params.latents[i].cols() != cfg.latent_dim) {
      throw DimensionError("params: latent shape mismatch in layer " + std::to_string(i));
    }
  }
  if (params.head.rows() != cfg.classes || params.head.cols() != cfg.paths()) {
    throw DimensionError("params: head must be classes x paths");
  }
}

/// A(i, l) = a(i, l) R(i).
template <typename T>
ChannelBank<T> materialize_channels(const ModelParams<T>& params, const Projectors<T>& projectors) {
  if (params.latents.size() != projectors.layers.size()) {
    throw DimensionError("materialize_channels: layer count mismatch");
  }
  ChannelBank<T> bank;
  for (std::size_t i = 0; i < params.latents.size(); ++i) {
    const auto& a = params.latents[i];
    const auto& r = projectors.layers[i];
    if (a.cols() != r.rows()) throw DimensionError("materialize_channels: latent/projector shape mismatch");
    Matrix<T> channels(a.rows(), r.cols());
    channels.eigen().noalias() = a.eigen() * r.eigen();
    bank.layers.push_back(std::move(channels));
  }
  return bank;
}

namespace detail {
template <typename T>
void check_path(const ChannelBank<T>& bank, std::span<const std::size_t> path) {
  if (path.size() != bank.depth()) throw DomainError("path: wrong number of layer indices");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i] >= bank.layers[i].rows()) {
      throw DomainError("path: channel index " + std::to_string(path[i]) + " out of range in layer " +
                        std::to_string(i));
    }
  }
}
}  // namespace detail

/// Product of the selected channels, without the input: B_m = prod_i A(i, m_i).
template <typename T>
void path_product_into(const ChannelBank<T>& bank, std::span<const std::size_t> path, std::span<T> out) {
  detail::check_path(bank, path);
  const auto first = bank.layers[0].row(path[0]);
  std::copy(first.begin(), first.end(), out.begin());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto ch = bank.layers[i].row(path[i]);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= ch[j];
  }
}

/// Z_m(h) written into `out` (length D).
template <typename T>
void compose_path_into(std::span<const T> h, const ChannelBank<T>& bank, std::span<const std::size_t> path,
                       std::span<T> out) {
  detail::require_same_length(h.size(), bank.dim(), "compose_path");
  detail::require_same_length(out.size(), bank.dim(), "compose_path");
  detail::check_path(bank, path);
  std::copy(h.begin(), h.end(), out.begin());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto ch = bank.layers[i].row(path[i]);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] *= ch[j];
  }
}

template <typename T>
Hypervector<T> compose_path(std::span<const T> h, const ChannelBank<T>& bank, std::span<const std::size_t> path) {
  Hypervector<T> out(bank.dim());
  compose_path_into<T>(h, bank, path, out);
  return out;
}

/// Y_c(h) = sum_m W[c, m] Z_m(h), paths in flat order, accumulated in double.
template <typename T>
Hypervector<T> class_bundle(std::span<const T> h, const ChannelBank<T>& bank, const Matrix<T>& head,
                            std::size_t c) {
  const PathIndexer paths(bank.radices());
  if (head.cols() != paths.count()) throw DimensionError("class_bundle: head column count != paths");
  if (c >= head.rows()) throw DomainError("class_bundle: class index out of range");
  std::vector<double> acc(bank.dim(), 0.0);
  Hypervector<T> z(bank.dim());
  std::vector<std::size_t> path(bank.depth(), 0);
  std::size_t m = 0;
  do {
    compose_path_into<T>(h, bank, path, z);
    const double w = static_cast<double>(head(c, m));
    for (std::size_t j = 0; j < z.size(); ++j) acc[j] += w * static_cast<double>(z[j]);
    ++m;
  } while (paths.next(path));
  return Hypervector<T>(acc.begin(), acc.end());
}

/// s_c = < Y_c(h), h > for every class, following the bundle-then-score order.
template <typename T>
std::vector<double> logits(std::span<const T> h, const ChannelBank<T>& bank, const Matrix<T>& head) {
  std::vector<double> s(head.rows(), 0.0);
  for (std::size_t c = 0; c < head.rows(); ++c) {
    const auto y = class_bundle<T>(h, bank, head, c);
    s[c] = dot<T>(std::span<const T>(y), h);
  }
  return s;
}

/// Argmax with NaN ranked below every number and ties to the lowest index.
std::size_t predict(std::span<const double> scores);

}  // namespace hdc

#endif  // HDC_MODEL_HPP
