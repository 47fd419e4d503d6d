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

#include "hdc/model.hpp"

#include <cmath>

namespace hdc {

std::size_t ModelConfig::paths() const {
  std::size_t m = 1;
  for (std::size_t l : layers) m *= l;
  return m;
}

std::size_t ModelConfig::total_channels() const {
  std::size_t n = 0;
  for (std::size_t l : layers) n += l;
  return n;
}

void ModelConfig::validate() const {
  if (layers.empty()) throw ConfigError("model: need at least one layer");
  for (std::size_t l : layers) {
    if (l == 0) throw ConfigError("model: every layer needs at least one channel");
  }
  if (latent_dim == 0) throw ConfigError("model: latent_dim must be >= 1");
  if (dim == 0) throw ConfigError("model: dim must be >= 1");
  if (classes < 2) throw ConfigError("model: need at least two classes");
}

std::uint64_t projector_seed(const ModelConfig& cfg, std::size_t layer) {
  return derive_seed(cfg.seed, "projector", layer);
}

std::uint64_t latent_seed(const ModelConfig& cfg, std::size_t layer) {
  return derive_seed(cfg.seed, "latent", layer);
}

RandomMatrixSpec projector_spec(const ModelConfig& cfg, std::size_t layer) {
  RandomMatrixSpec spec;
  spec.rows = cfg.latent_dim;
  spec.cols = cfg.dim;
  spec.kind = MatrixKind::kGaussian;
  spec.seed = projector_seed(cfg, layer);
  spec.scale = 1.0 / std::sqrt(static_cast<double>(cfg.latent_dim));
  return spec;
}

PathIndexer::PathIndexer(std::vector<std::size_t> radices) : radices_(std::move(radices)) {
  if (radices_.empty()) throw DomainError("PathIndexer: no layers");
  for (std::size_t r : radices_) {
    if (r == 0) throw DomainError("PathIndexer: zero-channel layer");
    count_ *= r;
  }
}

std::size_t PathIndexer::encode(std::span<const std::size_t> path) const {
  if (path.size() != radices_.size()) throw DomainError("PathIndexer: wrong path length");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < radices_.size(); ++i) {
    if (path[i] >= radices_[i]) throw DomainError("PathIndexer: index out of range");
    flat = flat * radices_[i] + path[i];
  }
  return flat;
}

void PathIndexer::decode(std::size_t flat, std::span<std::size_t> path) const {
  if (flat >= count_) throw DomainError("PathIndexer: flat index out of range");
  if (path.size() != radices_.size()) throw DomainError("PathIndexer: wrong path length");
  for (std::size_t i = radices_.size(); i-- > 0;) {
    path[i] = flat % radices_[i];
    flat /= radices_[i];
  }
}

std::vector<std::size_t> PathIndexer::decode(std::size_t flat) const {
  std::vector<std::size_t> path(radices_.size());
  decode(flat, path);
  return path;
}

bool PathIndexer::next(std::span<std::size_t> path) const {
  for (std::size_t i = radices_.size(); i-- > 0;) {
    if (++path[i] < radices_[i]) return true;
    path[i] = 0;
  }
  return false;
}

std::size_t predict(std::span<const double> scores) {
  if (scores.empty()) throw DomainError("predict: no scores");
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  bool have = false;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    const double v = scores[c];
    if (std::isnan(v)) continue;
    if (!have || v > best_value) {
      best = c;
      best_value = v;
      have = true;
    }
  }
  return best;
}

}  // namespace hdc
