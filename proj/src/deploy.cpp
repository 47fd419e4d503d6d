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

#include "hdc/deploy.hpp"

#include <algorithm>

#include "hdc/error.hpp"

namespace hdc {

DeployedModel::DeployedModel(ModelContainer container)
    : container_(std::move(container)), encoder_(container_.encoder) {
  if (container_.kind == ModelKind::kDecomposed) {
    if (!container_.model || !container_.params) throw DataError("container has no decomposed parameters");
    check_params(*container_.model, *container_.params);
    if (container_.model->dim != encoder_.dim()) throw DataError("model dim differs from encoder dim");
    const auto projectors = make_projectors<float>(*container_.model);
    decomposed_ = DeployedDecomposed{materialize_channels<float>(*container_.params, projectors), container_.params->head};
  } else {
    if (!container_.table) throw DataError("container has no prototype table");
    if (container_.table->dim() != encoder_.dim()) throw DataError("table dim differs from encoder dim");
  }
}

Matrix<float> DeployedModel::encode(const Matrix<double>& features) const {
  return encoder_.encode_batch(features, container_.standardizer);
}

const DeployedDecomposed& DeployedModel::decomposed() const {
  if (!decomposed_) throw DomainError("not a decomposed model");
  return *decomposed_;
}

const PrototypeTable& DeployedModel::table() const {
  if (!container_.table) throw DomainError("not a table model");
  return *container_.table;
}

std::vector<std::size_t> DeployedModel::predict(const Matrix<float>& encoded, InferenceMode mode) const {
  if (decomposed_) return DecomposedScorer<float>(decomposed_->bank, decomposed_->head, mode).predict_batch(encoded);
  std::vector<std::size_t> out(encoded.rows());
  for (std::size_t i = 0; i < encoded.rows(); ++i) out[i] = container_.table->predict(encoded.row(i));
  return out;
}

Matrix<double> DeployedModel::scores(const Matrix<float>& encoded, InferenceMode mode) const {
  Matrix<double> out(encoded.rows(), container_.classes);
  std::optional<DecomposedScorer<float>> scorer;
  if (decomposed_) scorer.emplace(decomposed_->bank, decomposed_->head, mode);
  for (std::size_t i = 0; i < encoded.rows(); ++i) {
    const auto s = scorer ? scorer->scores(encoded.row(i)) : container_.table->scores(encoded.row(i));
    if (s.size() != out.cols()) throw DataError("container class count differs from the model");
    std::copy(s.begin(), s.end(), out.row(i).begin());
  }
  return out;
}

double DeployedModel::accuracy(const Matrix<float>& encoded, std::span<const int> labels, InferenceMode mode,
                               const PrecisionFormat& precision, bool quantize_inputs) const {
  if (labels.size() != encoded.rows()) throw DimensionError("accuracy: labels/rows mismatch");
  if (encoded.rows() == 0) return 0.0;
  Matrix<float> x = encoded;
  if (quantize_inputs) quantize_values(x.values(), precision);
  std::vector<std::size_t> pred;
  if (decomposed_) {
    auto model = *decomposed_;
    quantize_model(model, precision);
    pred = DecomposedScorer<float>(model.bank, model.head, mode).predict_batch(x);
  } else {
    auto table = *container_.table;
    quantize_model(table, precision);
    pred.resize(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) pred[i] = table.predict(x.row(i));
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) correct += pred[i] == static_cast<std::size_t>(labels[i]) ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(pred.size());
}

SweepSubject DeployedModel::subject(std::string label, const Matrix<float>& encoded,
                                    std::span<const int> labels) const {
  if (decomposed_) return decomposed_subject(std::move(label), *decomposed_, encoded, labels);
  return table_subject(std::move(label), *container_.table, encoded, labels);
}

}  // namespace hdc
