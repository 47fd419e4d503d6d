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

#ifndef HDC_EXPERIMENT_HPP
#define HDC_EXPERIMENT_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hdc/baselines.hpp"
#include "hdc/budget.hpp"
#include "hdc/core.hpp"
#include "hdc/dataset.hpp"
#include "hdc/inference.hpp"
#include "hdc/robustness.hpp"
#include "hdc/training.hpp"

namespace hdc {

struct DataSourceConfig {
  std::string train_csv;
  std::string test_csv;
  std::optional<SyntheticSpec> synthetic;
  std::optional<std::size_t> classes;
  /// Stratified cap on training rows (large activity datasets); 0 disables.
  std::size_t max_train_rows = 50000;
};

struct RobustnessConfig {
  std::vector<double> p_grid;
  std::size_t trials = 5;
};

struct ExperimentConfig {
  std::string name = "experiment";
  DataSourceConfig data;
  std::uint64_t root_seed = 0;

  MatrixKind encoder_kind = MatrixKind::kGaussian;
  bool normalize_encoding = true;
  std::vector<std::size_t> dims{10000};
  std::vector<double> budgets{0.5};

  /// Fixed channel tuple; when empty, the planner picks one per budget.
  std::vector<std::size_t> layers;
  std::size_t latent_dim = 4096;
  std::size_t max_layers = 3;
  std::size_t max_channels = 5;
  TrainConfig train;
  RefineConfig onlinehd;

  std::vector<std::string> models{"decohd", "prototype", "onlinehd", "sparsehd-style"};
  std::vector<std::string> precisions{"fp32"};
  bool quantize_inputs = true;
  InferenceMode inference_mode = InferenceMode::kMaterializedPrototypes;
  std::optional<RobustnessConfig> robustness;

  std::string output_dir = "results";
  bool save_models = true;
};

/// Strict parse: unknown keys are ConfigErrors.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& cfg);
/// Reads a config file, or a manifest written by run_experiment (its "config" entry).
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ResultRow {
  std::string model;
  double m_budget = 1.0;
  std::string precision;
  std::size_t dim = 0;
  double accuracy = 0.0;
};

struct PrecisionRow {
  std::string model_kind;
  std::string format_name;
  std::size_t dim = 0;
  double test_accuracy = 0.0;
};

struct DecomposedRun {
  std::size_t dim = 0;
  double budget = 0.0;
  ModelConfig model;
  double footprint = 0.0;
  std::vector<EpochRecord> history;
  double final_test_accuracy = 0.0;
  double best_test_accuracy = 0.0;
  std::size_t best_epoch = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> results;
  std::vector<PrecisionRow> precision;
  std::vector<RobustnessRow> robustness;
  std::vector<DecomposedRun> decomposed;
  std::vector<std::string> warnings;
  nlohmann::json manifest;
};

/// Label used in per-model CSVs: "decohd(0.5)" style for budgeted models.
std::string model_label(const std::string& kind, std::optional<double> budget);

/// Trains and evaluates every requested model over dims x budgets x
/// precisions and writes results.csv, precision.csv, history_*.csv,
/// robustness.csv (when configured), model containers and manifest.json
/// into the output directory. On failure a manifest with status "failed"
/// is written next to whatever outputs were produced, then the error is
/// rethrown.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace hdc

#endif  // HDC_EXPERIMENT_HPP
