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

#ifndef HDC_TRAINING_HPP
#define HDC_TRAINING_HPP

// End-to-end training of the decomposed classifier.
//
// With u = h * h and B_m = prod_i A(i, m_i), the logits are
//   s_c = sum_m W[c, m] t_m,   t_m = <B_m, u>,
// so for the cross-entropy residual r_c = p_c - [c == y]:
//   dL/dW[c, m] = r_c t_m
//   dL/dB_m     = g_m u,   g_m = sum_c r_c W[c, m]
//   dL/dA(i, l) = sum_{m : m_i = l} dL/dB_m * prod_{j != i} A(j, m_j)
//   dL/da(i, l) = dL/dA(i, l) R(i)^T
// Per-sample work is done in fixed 32-row blocks whose partial sums are
// reduced in block order, so results do not depend on the worker count.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hdc/error.hpp"
#include "hdc/matrix.hpp"
#include "hdc/model.hpp"
#include "hdc/random.hpp"

namespace hdc {

struct TrainConfig {
  double learning_rate = 1e-3;
  double weight_decay = 5e-5;
  std::size_t epochs = 1000;
  std::size_t batch_size = 1024;
  std::size_t microbatch_size = 128;  // larger than batch_size means one microbatch per batch
  double sigma_init = 1.0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t shuffle_seed = 0;
  bool decay_latents = true;
  bool decay_head = true;
  std::size_t workers = 1;
  /// Stop after this many optimizer steps (for tests and smoke runs).
  std::optional<std::size_t> max_steps;

  void validate() const;
};

/// -log softmax(logits)[label] via a max-shifted log-sum-exp.
double cross_entropy(std::span<const double> logits, std::size_t label);
std::vector<double> softmax(std::span<const double> logits);

template <typename T>
struct Gradients {
  std::vector<Matrix<T>> latents;
  Matrix<T> head;
};

struct BatchStats {
  double loss_sum = 0.0;
  std::size_t correct = 0;
  std::size_t samples = 0;
};

/// All M path products B_m as rows of an M x D matrix (double).
template <typename T>
Matrix<double> path_products(const ChannelBank<T>& bank) {
  const PathIndexer paths(bank.radices());
  Matrix<double> out(paths.count(), bank.dim());
  std::vector<std::size_t> path(bank.depth(), 0);
  std::size_t m = 0;
  do {
    auto row = out.row(m);
    const auto first = bank.layers[0].row(path[0]);
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = static_cast<double>(first[j]);
    for (std::size_t i = 1; i < path.size(); ++i) {
      const auto ch = bank.layers[i].row(path[i]);
      for (std::size_t j = 0; j < row.size(); ++j) row[j] *= static_cast<double>(ch[j]);
    }
    ++m;
  } while (paths.next(path));
  return out;
}

/// Logits for every row of `encoded` (rows x C), using precomputed path products.
template <typename T>
Matrix<double> batched_logits(const Matrix<T>& encoded, const Matrix<double>& products, const Matrix<T>& head) {
  if (encoded.cols() != products.cols()) throw DimensionError("batched_logits: dim mismatch");
  if (head.cols() != products.rows()) throw DimensionError("batched_logits: head column count != paths");
  Matrix<double> out(encoded.rows(), head.rows());
  const Eigen::MatrixXd w = head.eigen().template cast<double>();
  constexpr std::size_t kRows = 256;
  for (std::size_t start = 0; start < encoded.rows(); start += kRows) {
    const std::size_t n = std::min(kRows, encoded.rows() - start);
    const auto x = encoded.eigen().middleRows(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(n));
    const Eigen::MatrixXd u = x.template cast<double>().array().square().matrix();
    const Eigen::MatrixXd t = u * products.eigen().transpose();
    out.eigen().middleRows(static_cast<Eigen::Index>(start), static_cast<Eigen::Index>(n)) = t * w.transpose();
  }
  return out;
}

/// Gradient accumulator in channel space for one optimizer step.
template <typename T>
class StepAccumulator {
 public:
  static constexpr std::size_t kBlockRows = 32;

  StepAccumulator(const ModelParams<T>& params, const ChannelBank<T>& bank, std::size_t workers = 1)
      : params_(params),
        bank_(bank),
        products_(path_products<T>(bank)),
        head_d_(params.head.eigen().template cast<double>()),
        path_grad_(products_.rows(), products_.cols()),
        head_grad_(params.head.rows(), params.head.cols()),
        workers_(std::max<std::size_t>(1, workers)) {
    if (params.head.cols() != products_.rows()) throw DimensionError("head column count != paths");
  }

  const Matrix<double>& products() const { return products_; }

  /// Adds `weight` times the summed per-sample gradients over `rows`.
  BatchStats add(const Matrix<T>& encoded, std::span<const int> labels, std::span<const std::size_t> rows,
                 double weight) {
    if (encoded.cols() != products_.cols()) throw DimensionError("accumulate: encoded dim != model dim");
    BatchStats stats;
    const std::size_t blocks = (rows.size() + kBlockRows - 1) / kBlockRows;
    std::vector<BlockResult> results(std::min(blocks, workers_));
    for (std::size_t first = 0; first < blocks; first += workers_) {
      const std::size_t group = std::min(workers_, blocks - first);
      auto run = [&](std::size_t k) {
        const std::size_t b = first + k;
        const std::size_t lo = b * kBlockRows;
        const std::size_t hi = std::min(rows.size(), lo + kBlockRows);
        compute_block(encoded, labels, rows.subspan(lo, hi - lo), weight, results[k]);
      };
      if (group == 1) {
        run(0);
      } else {
        std::vector<std::thread> threads;
        for (std::size_t k = 0; k < group; ++k) threads.emplace_back(run, k);
        for (auto& t : threads) t.join();
      }
      for (std::size_t k = 0; k < group; ++k) {
        auto& r = results[k];
        if (!r.error.empty()) throw TrainingError(r.error);
        path_grad_.eigen() += r.path_grad;
        head_grad_.eigen() += r.head_grad;
        stats.loss_sum += r.stats.loss_sum;
        stats.correct += r.stats.correct;
        stats.samples += r.stats.samples;
      }
    }
    return stats;
  }

  /// Converts the accumulated channel-space gradient into latent and head gradients.
  Gradients<T> finish(const Projectors<T>& projectors) const {
    Gradients<T> g;
    g.head = head_grad_.template cast<T>();
    const PathIndexer paths(bank_.radices());
    const std::size_t depth = bank_.depth();
    const std::size_t dim = bank_.dim();
    std::vector<Matrix<double>> channel_grad;
    for (const auto& layer : bank_.layers) channel_grad.emplace_back(layer.rows(), dim);
    std::vector<std::size_t> path(depth, 0);
    std::vector<double> partial(dim);
    std::size_t m = 0;
    do {
      const auto pg = path_grad_.row(m);
      for (std::size_t i = 0; i < depth; ++i) {
        std::copy(pg.begin(), pg.end(), partial.begin());
        for (std::size_t j = 0; j < depth; ++j) {
          if (j == i) continue;
          const auto ch = bank_.layers[j].row(path[j]);
          for (std::size_t k = 0; k < dim; ++k) partial[k] *= static_cast<double>(ch[k]);
        }
        auto dst = channel_grad[i].row(path[i]);
        for (std::size_t k = 0; k < dim; ++k) dst[k] += partial[k];
      }
      ++m;
    } while (paths.next(path));
    for (std::size_t i = 0; i < depth; ++i) {
      const auto& r = projectors.layers[i];
      Matrix<T> da(params_.latents[i].rows(), r.rows());
      da.eigen().noalias() = channel_grad[i].eigen().template cast<T>() * r.eigen().transpose();
      g.latents.push_back(std::move(da));
    }
    for (const auto& l : g.latents) check_finite(l.values(), "latent gradient");
    check_finite(g.head.values(), "head gradient");
    return g;
  }

 private:
  struct BlockResult {
    Eigen::MatrixXd path_grad;
    Eigen::MatrixXd head_grad;
    BatchStats stats;
    std::string error;
  };

  template <typename U>
  static void check_finite(std::span<U> values, const char* what) {
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (!std::isfinite(static_cast<double>(values[k]))) {
        throw TrainingError(std::string("non-finite ") + what + " at flat index " + std::to_string(k));
      }
    }
  }

  void compute_block(const Matrix<T>& encoded, std::span<const int> labels, std::span<const std::size_t> rows,
                     double weight, BlockResult& out) const {
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto dim = static_cast<Eigen::Index>(products_.cols());
    const std::size_t classes = params_.head.rows();
    out.error.clear();
    out.stats = {};
    Eigen::MatrixXd u(n, dim);
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto h = encoded.row(rows[static_cast<std::size_t>(b)]);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double v = static_cast<double>(h[static_cast<std::size_t>(j)]);
        u(b, j) = v * v;
      }
    }
    const Eigen::MatrixXd t = u * products_.eigen().transpose();  // n x M
    const Eigen::MatrixXd s = t * head_d_.transpose();             // n x C
    Eigen::MatrixXd residual(n, static_cast<Eigen::Index>(classes));
    std::vector<double> logit_row(classes);
    for (Eigen::Index b = 0; b < n; ++b) {
      const std::size_t row = rows[static_cast<std::size_t>(b)];
      const int label = labels[row];
      if (label < 0 || static_cast<std::size_t>(label) >= classes) {
        out.error = "label " + std::to_string(label) + " out of range at row " + std::to_string(row);
        return;
      }
      for (std::size_t c = 0; c < classes; ++c) logit_row[c] = s(b, static_cast<Eigen::Index>(c));
      for (double v : logit_row) {
        if (!std::isfinite(v)) {
          std::ostringstream msg;
          msg << "non-finite logit at row " << row << " (max |t| = " << t.row(b).cwiseAbs().maxCoeff() << ")";
          out.error = msg.str();
          return;
        }
      }
      out.stats.loss_sum += cross_entropy(logit_row, static_cast<std::size_t>(label));
      out.stats.correct += predict(logit_row) == static_cast<std::size_t>(label) ? 1 : 0;
      const auto p = softmax(logit_row);
      for (std::size_t c = 0; c < classes; ++c) {
        residual(b, static_cast<Eigen::Index>(c)) = weight * (p[c] - (static_cast<std::size_t>(label) == c ? 1.0 : 0.0));
      }
    }
    out.stats.samples = rows.size();
    out.head_grad.noalias() = residual.transpose() * t;  // C x M
    const Eigen::MatrixXd g = residual * head_d_;         // n x M
    out.path_grad.noalias() = g.transpose() * u;          // M x D
  }

  const ModelParams<T>& params_;
  const ChannelBank<T>& bank_;
  Matrix<double> products_;
  Eigen::MatrixXd head_d_;
  Matrix<double> path_grad_;
  Matrix<double> head_grad_;
  std::size_t workers_;
};

/// Exact gradient of the mean cross-entropy over all rows of `encoded`.
template <typename T>
Gradients<T> backward(const Matrix<T>& encoded, std::span<const int> labels, const ModelParams<T>& params,
                      const Projectors<T>& projectors, double* mean_loss = nullptr, std::size_t workers = 1) {
  if (labels.size() != encoded.rows()) throw DimensionError("backward: labels/rows mismatch");
  if (encoded.rows() == 0) throw DomainError("backward: empty batch");
  const auto bank = materialize_channels<T>(params, projectors);
  StepAccumulator<T> acc(params, bank, workers);
  std::vector<std::size_t> rows(encoded.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  const auto stats = acc.add(encoded, labels, rows, 1.0 / static_cast<double>(rows.size()));
  if (mean_loss) *mean_loss = stats.loss_sum / static_cast<double>(stats.samples);
  return acc.finish(projectors);
}

/// Mean cross-entropy of the model over all rows (used by gradient checks).
template <typename T>
double mean_loss(const Matrix<T>& encoded, std::span<const int> labels, const ModelParams<T>& params,
                 const Projectors<T>& projectors) {
  const auto bank = materialize_channels<T>(params, projectors);
  const auto s = batched_logits<T>(encoded, path_products<T>(bank), params.head);
  double total = 0.0;
  for (std::size_t i = 0; i < encoded.rows(); ++i) {
    total += cross_entropy(s.row(i), static_cast<std::size_t>(labels[i]));
  }
  return total / static_cast<double>(encoded.rows());
}

template <typename T>
struct AdamState {
  std::size_t step = 0;
  std::vector<Matrix<double>> m_latents, v_latents;
  Matrix<double> m_head, v_head;

  static AdamState zeros_like(const ModelParams<T>& params) {
    AdamState s;
    for (const auto& l : params.latents) {
      s.m_latents.emplace_back(l.rows(), l.cols());
      s.v_latents.emplace_back(l.rows(), l.cols());
    }
    s.m_head = Matrix<double>(params.head.rows(), params.head.cols());
    s.v_head = Matrix<double>(params.head.rows(), params.head.cols());
    return s;
  }
};

namespace detail {
template <typename T>
void adamw_update(std::span<T> p, std::span<const T> g, std::span<double> m, std::span<double> v,
                  const TrainConfig& cfg, bool decay, double bc1, double bc2) {
  if (p.size() != g.size() || p.size() != m.size() || p.size() != v.size()) {
    throw DimensionError("adamw_step: state shape mismatch");
  }
  const double lr = cfg.learning_rate;
  const double shrink = decay ? 1.0 - lr * cfg.weight_decay : 1.0;
  const double sqrt_bc2 = std::sqrt(bc2);
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double gk = static_cast<double>(g[k]);
    m[k] = cfg.beta1 * m[k] + (1.0 - cfg.beta1) * gk;
    v[k] = cfg.beta2 * v[k] + (1.0 - cfg.beta2) * gk * gk;
    const double denom = std::sqrt(v[k]) / sqrt_bc2 + cfg.epsilon;
    p[k] = static_cast<T>(static_cast<double>(p[k]) * shrink - (lr / bc1) * m[k] / denom);
  }
}
}  // namespace detail

/// Decoupled weight-decay Adam with bias-corrected moments.
template <typename T>
void adamw_step(ModelParams<T>& params, const Gradients<T>& grads, AdamState<T>& state, const TrainConfig& cfg) {
  if (grads.latents.size() != params.latents.size() || state.m_latents.size() != params.latents.size()) {
    throw DimensionError("adamw_step: layer count mismatch");
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.latents.size(); ++i) {
    detail::adamw_update<T>(params.latents[i].values(), grads.latents[i].values(), state.m_latents[i].values(),
                            state.v_latents[i].values(), cfg, cfg.decay_latents, bc1, bc2);
  }
  detail::adamw_update<T>(params.head.values(), grads.head.values(), state.m_head.values(), state.v_head.values(),
                          cfg, cfg.decay_head, bc1, bc2);
}

struct EpochRecord {
  std::size_t epoch = 0;
  double mean_loss = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = std::numeric_limits<double>::quiet_NaN();
  double wall_seconds = 0.0;
};

template <typename T>
struct TrainResult {
  ModelParams<T> params;
  std::vector<EpochRecord> history;
  std::size_t steps = 0;
  bool diverged = false;
  std::string message;
  /// Best test accuracy over epochs; the final-epoch value is history.back().
  double best_test_accuracy = std::numeric_limits<double>::quiet_NaN();
  std::size_t best_epoch = 0;
};

/// Accuracy of the decomposed model on `encoded` rows.
template <typename T>
double decomposed_accuracy(const Matrix<T>& encoded, std::span<const int> labels, const ChannelBank<T>& bank,
                           const Matrix<T>& head) {
  if (encoded.rows() == 0) return 0.0;
  const auto s = batched_logits<T>(encoded, path_products<T>(bank), head);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < encoded.rows(); ++i) {
    correct += predict(s.row(i)) == static_cast<std::size_t>(labels[i]) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(encoded.rows());
}

/// Shuffle-each-epoch mini-batch training. Each batch accumulates its
/// microbatch gradients (averaged to the batch mean) before one AdamW step.
/// On a non-finite loss or gradient the run stops and returns the last
/// parameters that produced a finite step, with `diverged` set.
template <typename T>
TrainResult<T> train(const Matrix<T>& train_x, std::span<const int> train_y, const ModelConfig& model_cfg,
                     const TrainConfig& cfg, const Matrix<T>* test_x = nullptr, std::span<const int> test_y = {},
                     const std::function<void(const EpochRecord&)>& on_epoch = {}) {
  model_cfg.validate();
  cfg.validate();
  if (train_x.rows() != train_y.size()) throw DimensionError("train: labels/rows mismatch");
  if (train_x.cols() != model_cfg.dim) throw DimensionError("train: encoded dim != model dim");
  if (train_x.rows() == 0) throw DomainError("train: empty training set");
  const auto projectors = make_projectors<T>(model_cfg);
  TrainResult<T> result;
  result.params = init_params<T>(model_cfg, cfg.sigma_init);
  auto state = AdamState<T>::zeros_like(result.params);
  const auto clock_start = std::chrono::steady_clock::now();
  const std::size_t n = train_x.rows();

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.max_steps && result.steps >= *cfg.max_steps) break;
    const auto order = shuffled_indices(n, derive_seed(cfg.shuffle_seed, "epoch", epoch));
    BatchStats epoch_stats;
    for (std::size_t start = 0; start < n; start += cfg.batch_size) {
      if (cfg.max_steps && result.steps >= *cfg.max_steps) break;
      const std::size_t batch_len = std::min(cfg.batch_size, n - start);
      const std::span<const std::size_t> batch(order.data() + start, batch_len);
      try {
        const auto bank = materialize_channels<T>(result.params, projectors);
        StepAccumulator<T> acc(result.params, bank, cfg.workers);
        const double weight = 1.0 / static_cast<double>(batch_len);
        for (std::size_t mb = 0; mb < batch_len; mb += cfg.microbatch_size) {
          const std::size_t mb_len = std::min(cfg.microbatch_size, batch_len - mb);
          const auto s = acc.add(train_x, train_y, batch.subspan(mb, mb_len), weight);
          epoch_stats.loss_sum += s.loss_sum;
          epoch_stats.correct += s.correct;
          epoch_stats.samples += s.samples;
        }
        if (!std::isfinite(epoch_stats.loss_sum)) throw TrainingError("loss is not finite");
        const auto grads = acc.finish(projectors);
        auto next = result.params;
        adamw_step<T>(next, grads, state, cfg);
        for (const auto& l : next.latents) {
          for (T v : l.values()) {
            if (!std::isfinite(static_cast<double>(v))) throw TrainingError("parameter became non-finite");
          }
        }
        result.params = std::move(next);
        ++result.steps;
      } catch (const TrainingError& e) {
        result.diverged = true;
        std::ostringstream msg;
        msg << "diverged at epoch " << epoch << ", step " << result.steps + 1 << ": " << e.what();
        result.message = msg.str();
        return result;
      }
    }
    if (epoch_stats.samples == 0) break;
    EpochRecord rec;
    rec.epoch = epoch;
    rec.mean_loss = epoch_stats.loss_sum / static_cast<double>(epoch_stats.samples);
    rec.train_accuracy = static_cast<double>(epoch_stats.correct) / static_cast<double>(epoch_stats.samples);
    if (test_x != nullptr && test_x->rows() > 0) {
      const auto bank = materialize_channels<T>(result.params, projectors);
      rec.test_accuracy = decomposed_accuracy<T>(*test_x, test_y, bank, result.params.head);
      if (std::isnan(result.best_test_accuracy) || rec.test_accuracy > result.best_test_accuracy) {
        result.best_test_accuracy = rec.test_accuracy;
        result.best_epoch = epoch;
      }
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start).count();
    result.history.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }
  return result;
}

}  // namespace hdc

#endif  // HDC_TRAINING_HPP
