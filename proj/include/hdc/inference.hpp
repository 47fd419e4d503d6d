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

#ifndef HDC_INFERENCE_HPP
#define HDC_INFERENCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hdc/core.hpp"
#include "hdc/matrix.hpp"
#include "hdc/model.hpp"

namespace hdc {

enum class InferenceMode { kStreamedBundles, kScoreOnly, kMaterializedPrototypes };

std::string to_string(InferenceMode mode);
InferenceMode inference_mode_from_string(const std::string& name);

namespace inference_probe {
/// Number of D-length working buffers allocated by the streaming routines on
/// this thread since the last reset.
std::size_t hypervector_allocations();
void reset();
void record(std::size_t n = 1);
}  // namespace inference_probe

/// Score-only streaming: per path, t_m = <Z_m(h), h> is computed once and
/// folded into all C scores. One working hypervector is reused for every path.
template <typename T>
std::vector<double> stream_scores(std::span<const T> h, const ChannelBank<T>& bank, const Matrix<T>& head) {
  detail::require_same_length(h.size(), bank.dim(), "stream_scores");
  const PathIndexer paths(bank.radices());
  if (head.cols() != paths.count()) throw DimensionError("stream_scores: head column count != paths");
  std::vector<double> scores(head.rows(), 0.0);
  Hypervector<T> z(bank.dim());
  inference_probe::record();
  std::vector<std::size_t> path(bank.depth(), 0);
  std::size_t m = 0;
  do {
    compose_path_into<T>(h, bank, path, z);
    const double t = dot<T>(std::span<const T>(z), h);
    for (std::size_t c = 0; c < head.rows(); ++c) scores[c] += static_cast<double>(head(c, m)) * t;
    ++m;
  } while (paths.next(path));
  return scores;
}

/// Streams paths into C class bundles Y_c, then scores each bundle against h.
template <typename T>
std::vector<double> stream_bundles(std::span<const T> h, const ChannelBank<T>& bank, const Matrix<T>& head) {
  detail::require_same_length(h.size(), bank.dim(), "stream_bundles");
  const PathIndexer paths(bank.radices());
  if (head.cols() != paths.count()) throw DimensionError("stream_bundles: head column count != paths");
  const std::size_t classes = head.rows();
  const std::size_t dim = bank.dim();
  Matrix<T> bundles(classes, dim);
  Hypervector<T> z(dim);
  inference_probe::record(classes + 1);
  std::vector<std::size_t> path(bank.depth(), 0);
  std::size_t m = 0;
  do {
    compose_path_into<T>(h, bank, path, z);
    for (std::size_t c = 0; c < classes; ++c) {
      const T w = head(c, m);
      if (w == T{0}) continue;
      auto y = bundles.row(c);
      for (std::size_t j = 0; j < dim; ++j) y[j] += w * z[j];
    }
    ++m;
  } while (paths.next(path));
  std::vector<double> scores(classes);
  for (std::size_t c = 0; c < classes; ++c) scores[c] = dot<T>(bundles.row(c), h);
  return scores;
}

/// Input-independent class prototypes P_c = sum_m W[c, m] prod_i A(i, m_i).
template <typename T>
Matrix<T> materialize_prototypes(const ChannelBank<T>& bank, const Matrix<T>& head) {
  const PathIndexer paths(bank.radices());
  if (head.cols() != paths.count()) throw DimensionError("materialize_prototypes: head column count != paths");
  const std::size_t dim = bank.dim();
  Matrix<double> acc(head.rows(), dim);
  Hypervector<T> b(dim);
  std::vector<std::size_t> path(bank.depth(), 0);
  std::size_t m = 0;
  do {
    path_product_into<T>(bank, path, b);
    for (std::size_t c = 0; c < head.rows(); ++c) {
      const double w = static_cast<double>(head(c, m));
      auto row = acc.row(c);
      for (std::size_t j = 0; j < dim; ++j) row[j] += w * static_cast<double>(b[j]);
    }
    ++m;
  } while (paths.next(path));
  return acc.template cast<T>();
}

/// s_c = <P_c, h * h>. Equal to the streamed scores because binding is elementwise.
template <typename T>
std::vector<double> score_prototypes(const Matrix<T>& prototypes, std::span<const T> h) {
  detail::require_same_length(h.size(), prototypes.cols(), "score_prototypes");
  std::vector<double> scores(prototypes.rows(), 0.0);
  for (std::size_t c = 0; c < prototypes.rows(); ++c) {
    const auto p = prototypes.row(c);
    double acc = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      const double hj = static_cast<double>(h[j]);
      acc += static_cast<double>(p[j]) * (hj * hj);
    }
    scores[c] = acc;
  }
  return scores;
}

/// Auxiliary bytes each mode keeps resident per query (score-only and
/// streamed bundles) or in total (materialized prototypes).
std::uint64_t peak_memory_estimate(InferenceMode mode, std::size_t classes, std::size_t dim,
                                   std::size_t element_bytes = sizeof(float));

/// Materialized prototypes when C*D elements fit `memory_cap_bytes`,
/// score-only streaming otherwise.
InferenceMode choose_mode(std::size_t classes, std::size_t dim, std::uint64_t memory_cap_bytes,
                          std::size_t element_bytes = sizeof(float));

/// Batched classifier over a trained bank and head in one of the three modes.
template <typename T>
class DecomposedScorer {
 public:
  DecomposedScorer(ChannelBank<T> bank, Matrix<T> head, InferenceMode mode)
      : bank_(std::move(bank)), head_(std::move(head)), mode_(mode) {
    if (mode_ == InferenceMode::kMaterializedPrototypes) prototypes_ = materialize_prototypes<T>(bank_, head_);
  }

  InferenceMode mode() const { return mode_; }
  const ChannelBank<T>& bank() const { return bank_; }
  const Matrix<T>& head() const { return head_; }

  std::vector<double> scores(std::span<const T> h) const {
    switch (mode_) {
      case InferenceMode::kStreamedBundles:
        return stream_bundles<T>(h, bank_, head_);
      case InferenceMode::kScoreOnly:
        return stream_scores<T>(h, bank_, head_);
      case InferenceMode::kMaterializedPrototypes:
        break;
    }
    return score_prototypes<T>(*prototypes_, h);
  }

  std::size_t predict_one(std::span<const T> h) const { return hdc::predict(scores(h)); }

  std::vector<std::size_t> predict_batch(const Matrix<T>& encoded) const {
    std::vector<std::size_t> out(encoded.rows());
    for (std::size_t i = 0; i < encoded.rows(); ++i) out[i] = predict_one(encoded.row(i));
    return out;
  }

 private:
  ChannelBank<T> bank_;
  Matrix<T> head_;
  InferenceMode mode_;
  std::optional<Matrix<T>> prototypes_;
};

}  // namespace hdc

#endif  // HDC_INFERENCE_HPP
