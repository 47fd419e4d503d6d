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

#ifndef HDC_DEPLOY_HPP
#define HDC_DEPLOY_HPP

// A loaded container ready to score raw feature rows: the encoder is
// regenerated from its seed and decomposed channels are materialized.

#include <optional>
#include <span>
#include <vector>

#include "hdc/encoder.hpp"
#include "hdc/inference.hpp"
#include "hdc/precision.hpp"
#include "hdc/robustness.hpp"
#include "hdc/serialize.hpp"

namespace hdc {

class DeployedModel {
 public:
  explicit DeployedModel(ModelContainer container);

  const ModelContainer& container() const { return container_; }
  ModelKind kind() const { return container_.kind; }
  const Encoder& encoder() const { return encoder_; }

  Matrix<float> encode(const Matrix<double>& features) const;

  /// Accuracy on encoded rows after projecting the stored parameters (and,
  /// when `quantize_inputs`, the inputs) onto `precision`.
  double accuracy(const Matrix<float>& encoded, std::span<const int> labels, InferenceMode mode,
                  const PrecisionFormat& precision, bool quantize_inputs = true) const;
  std::vector<std::size_t> predict(const Matrix<float>& encoded, InferenceMode mode) const;
  /// rows x classes; `mode` only matters for decomposed models.
  Matrix<double> scores(const Matrix<float>& encoded, InferenceMode mode) const;

  /// Bit-flip sweep subject over the stored parameters.
  SweepSubject subject(std::string label, const Matrix<float>& encoded, std::span<const int> labels) const;

  /// Decomposed models only.
  const DeployedDecomposed& decomposed() const;
  /// Table models only (the sparse variant already has its mask applied).
  const PrototypeTable& table() const;

 private:
  ModelContainer container_;
  Encoder encoder_;
  std::optional<DeployedDecomposed> decomposed_;
};

}  // namespace hdc

#endif  // HDC_DEPLOY_HPP
