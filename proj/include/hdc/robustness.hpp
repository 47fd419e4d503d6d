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

#ifndef HDC_ROBUSTNESS_HPP
#define HDC_ROBUSTNESS_HPP

// Fault injection into stored 32-bit parameters and precision projection of
// whole models.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hdc/baselines.hpp"
#include "hdc/matrix.hpp"
#include "hdc/model.hpp"
#include "hdc/precision.hpp"

namespace hdc {

/// What a memory fault hits. Only stored parameters are modelled today.
enum class NoiseTarget { kModelParameters };

struct NoiseSpec {
  double flip_probability = 0.0;
  NoiseTarget target = NoiseTarget::kModelParameters;
  std::uint64_t seed = 0;
};

/// The decomposed model as deployed for inference: materialized channels and head.
struct DeployedDecomposed {
  ChannelBank<float> bank;
  Matrix<float> head;
};

/// Flips bit b of value k independently with the spec's probability, drawing
/// from counter (first_index + k) * 32 + b. Returns the number of flipped bits.
/// NaN and Inf results are kept.
std::uint64_t inject_bitflips(std::span<float> values, const NoiseSpec& spec, std::uint64_t first_index = 0);

/// Tensors are visited in a fixed order (latents by layer, then head), with
/// consecutive value indices.
std::uint64_t inject_bitflips(ModelParams<float>& params, const NoiseSpec& spec);
std::uint64_t inject_bitflips(DeployedDecomposed& model, const NoiseSpec& spec);
std::uint64_t inject_bitflips(PrototypeTable& table, const NoiseSpec& spec);

void quantize_model(ModelParams<float>& params, const PrecisionFormat& fmt);
void quantize_model(DeployedDecomposed& model, const PrecisionFormat& fmt);
void quantize_model(PrototypeTable& table, const PrecisionFormat& fmt);

struct SweepSubject {
  std::string model_kind;
  /// Accuracy of a copy of the model corrupted with `spec`.
  std::function<double(const NoiseSpec& spec)> evaluate;
};

struct RobustnessRow {
  std::string model_kind;
  double p_flip = 0.0;
  std::size_t trial = 0;
  double test_accuracy = 0.0;
};

struct RobustnessSummary {
  std::string model_kind;
  double p_flip = 0.0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  std::size_t trials = 0;
};

/// Seed for (p index, trial); shared by all subjects so models see the same
/// random stream at each grid point.
std::uint64_t bitflip_seed(std::uint64_t root_seed, std::size_t p_index, std::size_t trial);

/// Rows sorted by model kind, then p, then trial.
std::vector<RobustnessRow> robustness_sweep(const std::vector<SweepSubject>& subjects,
                                            std::span<const double> p_grid, std::size_t trials,
                                            std::uint64_t root_seed);

std::vector<RobustnessSummary> summarize(std::span<const RobustnessRow> rows);

/// Soft check: grid points where a model's mean accuracy rises by more than
/// `tolerance` as p grows. Empty when the curves are weakly decreasing.
std::vector<std::string> monotonicity_warnings(std::span<const RobustnessSummary> summary, double tolerance);

SweepSubject table_subject(std::string kind, const PrototypeTable& table, const Matrix<float>& test_x,
                           std::span<const int> test_y);
SweepSubject decomposed_subject(std::string kind, const DeployedDecomposed& model, const Matrix<float>& test_x,
                                std::span<const int> test_y);

double deployed_accuracy(const DeployedDecomposed& model, const Matrix<float>& test_x, std::span<const int> test_y);

}  // namespace hdc

#endif  // HDC_ROBUSTNESS_HPP
