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

// Command-line front end. Exit codes: 0 ok, 1 configuration error,
// 2 data error, 3 training failure.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hdc/budget.hpp"
#include "hdc/csv.hpp"
#include "hdc/dataset.hpp"
#include "hdc/deploy.hpp"
#include "hdc/error.hpp"
#include "hdc/experiment.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kConfig = 1, kData = 2, kTraining = 3 };

struct SynthArgs {
  hdc::SyntheticSpec spec;
  std::string out_dir = ".";
};

struct RunArgs {
  std::string config;
  std::string train_csv;
  std::string test_csv;
  std::vector<std::size_t> dims;
  std::vector<double> budgets;
  std::vector<std::size_t> layers;
  std::optional<std::size_t> latent_dim;
  std::optional<std::size_t> epochs;
  std::optional<double> learning_rate;
  std::optional<std::size_t> batch_size;
  std::optional<std::size_t> workers;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> models;
  std::vector<std::string> precisions;
  std::string out_dir;
};

struct EvalArgs {
  std::string model;
  std::string data;
  std::string mode = "auto";
  std::uint64_t memory_cap_bytes = 64ull << 20;
  std::vector<std::string> precisions{"fp32"};
  bool raw_inputs = false;
};

struct RobustArgs {
  std::vector<std::string> models;
  std::string data;
  std::vector<double> p_grid{0.0, 1e-4, 1e-3, 1e-2};
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::string out = "robustness.csv";
};

struct BudgetArgs {
  std::vector<double> budgets{0.5};
  std::size_t classes = 26;
  std::size_t dim = 10000;
  std::vector<std::size_t> latent_dims{4096};
  std::size_t max_layers = 3;
  std::size_t max_channels = 5;
  std::string out;
};

hdc::ExperimentConfig build_config(const RunArgs& a, bool single_run) {
  hdc::ExperimentConfig cfg;
  if (!a.config.empty()) cfg = hdc::load_experiment_config(a.config);
  if (single_run && a.config.empty()) {
    cfg.models = {"decohd"};
    cfg.name = "train";
  }
  if (!a.train_csv.empty() || !a.test_csv.empty()) {
    if (a.train_csv.empty() || a.test_csv.empty()) throw hdc::ConfigError("--train-csv and --test-csv go together");
    cfg.data.synthetic.reset();
    cfg.data.train_csv = a.train_csv;
    cfg.data.test_csv = a.test_csv;
  }
  if (!a.dims.empty()) cfg.dims = a.dims;
  if (!a.budgets.empty()) cfg.budgets = a.budgets;
  if (!a.layers.empty()) cfg.layers = a.layers;
  if (a.latent_dim) cfg.latent_dim = *a.latent_dim;
  if (a.epochs) cfg.train.epochs = *a.epochs;
  if (a.learning_rate) cfg.train.learning_rate = *a.learning_rate;
  if (a.batch_size) cfg.train.batch_size = *a.batch_size;
  if (a.workers) cfg.train.workers = *a.workers;
  if (a.seed) cfg.root_seed = *a.seed;
  if (!a.models.empty()) cfg.models = a.models;
  if (!a.precisions.empty()) cfg.precisions = a.precisions;
  if (!a.out_dir.empty()) cfg.output_dir = a.out_dir;
  if (single_run && (cfg.dims.size() != 1 || cfg.budgets.size() != 1))
    throw hdc::ConfigError("train expects one dim and one budget; use sweep for grids");
  if (cfg.data.train_csv.empty() && !cfg.data.synthetic) throw hdc::ConfigError("no training data given");
  return cfg;
}

int run(const RunArgs& a, bool single_run) {
  const auto cfg = build_config(a, single_run);
  const auto result = hdc::run_experiment(cfg, &std::cerr);
  std::printf("%-22s %-11s %7s %9s\n", "model", "precision", "D", "accuracy");
  for (const auto& r : result.results)
    std::printf("%-22s %-11s %7zu %9.4f\n", hdc::model_label(r.model, r.model == "decohd" || r.model == "sparsehd-style"
                                                                      ? std::optional<double>(r.m_budget)
                                                                      : std::nullopt)
                                               .c_str(),
                r.precision.c_str(), r.dim, r.accuracy);
  for (const auto& w : result.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  std::printf("outputs in %s\n", cfg.output_dir.c_str());
  return kOk;
}

hdc::Dataset load_split(const std::string& path, std::size_t classes) {
  hdc::CsvSchema schema;
  schema.classes = classes;
  schema.split = hdc::Split::kTest;
  return hdc::load_csv(hdc::resolve_data_path(path), schema);
}

int eval(const EvalArgs& a) {
  const hdc::DeployedModel model(hdc::load_model(a.model));
  const auto data = load_split(a.data, model.container().classes);
  const auto encoded = model.encode(data.features);
  const std::size_t dim = model.encoder().dim();
  hdc::InferenceMode mode = hdc::InferenceMode::kMaterializedPrototypes;
  if (a.mode == "auto")
    mode = hdc::choose_mode(model.container().classes, dim, a.memory_cap_bytes);
  else
    mode = hdc::inference_mode_from_string(a.mode);
  const bool decomposed = model.kind() == hdc::ModelKind::kDecomposed;
  std::printf("model %s, D=%zu, %zu test rows%s%s\n", hdc::to_string(model.kind()).c_str(), dim, data.size(),
              decomposed ? ", mode " : "", decomposed ? hdc::to_string(mode).c_str() : "");
  for (const auto& name : a.precisions) {
    const auto fmt = hdc::format_from_name(name);
    std::printf("%-10s %.4f\n", fmt.name.c_str(), model.accuracy(encoded, data.labels, mode, fmt, !a.raw_inputs));
  }
  return kOk;
}

int robustness(const RobustArgs& a) {
  std::vector<hdc::DeployedModel> models;
  for (const auto& path : a.models) models.emplace_back(hdc::load_model(path));
  std::vector<hdc::SweepSubject> subjects;
  std::vector<hdc::Matrix<float>> encoded;
  std::vector<hdc::Dataset> data;
  encoded.reserve(models.size());
  data.reserve(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    data.push_back(load_split(a.data, models[i].container().classes));
    encoded.push_back(models[i].encode(data.back().features));
    std::string label = fs::path(a.models[i]).stem().string();
    if (label.rfind("model_", 0) == 0) label = label.substr(6);
    subjects.push_back(models[i].subject(label, encoded.back(), data.back().labels));
  }
  const auto rows = hdc::robustness_sweep(subjects, a.p_grid, a.trials, a.seed);
  hdc::CsvWriter csv(a.out, {"model_kind", "p_flip", "trial", "test_accuracy"});
  for (const auto& r : rows)
    csv.write_row({r.model_kind, hdc::format_number(r.p_flip), std::to_string(r.trial),
                   hdc::format_number(r.test_accuracy)});
  const auto summary = hdc::summarize(rows);
  std::printf("%-28s %10s %8s %8s\n", "model", "p_flip", "mean", "std");
  for (const auto& s : summary)
    std::printf("%-28s %10.3g %8.4f %8.4f\n", s.model_kind.c_str(), s.p_flip, s.mean_accuracy, s.std_accuracy);
  for (const auto& w : hdc::monotonicity_warnings(summary, 0.02)) std::fprintf(stderr, "warning: %s\n", w.c_str());
  return kOk;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "x" : "") + std::to_string(v[i]);
  return s;
}

int budget(const BudgetArgs& a) {
  std::optional<hdc::CsvWriter> csv;
  if (!a.out.empty())
    csv.emplace(a.out, std::vector<std::string>{"m_target", "layers", "latent_dim", "footprint", "paths",
                                                "trainable_params", "savings", "selected"});
  std::printf("%-8s %-12s %7s %10s %6s %12s %8s\n", "target", "layers", "latent", "footprint", "paths", "trainable",
              "savings");
  for (const double m : a.budgets) {
    hdc::BudgetQuery q;
    q.m_target = m;
    q.classes = a.classes;
    q.dim = a.dim;
    q.latent_dims = a.latent_dims;
    q.max_layers = a.max_layers;
    q.max_channels = a.max_channels;
    const auto selected = hdc::select_layers(q);
    for (const auto& r : hdc::enumerate_configs(q)) {
      const bool chosen = r.layers == selected;
      std::printf("%-8g %-12s %7zu %10.4f %6zu %12zu %8.4f%s\n", m, join(r.layers).c_str(), r.latent_dim, r.m, r.paths,
                  r.trainable_params, r.savings, chosen ? "  *" : "");
      if (csv)
        csv->write_row({hdc::format_number(m), join(r.layers), std::to_string(r.latent_dim), hdc::format_number(r.m),
                        std::to_string(r.paths), std::to_string(r.trainable_params), hdc::format_number(r.savings),
                        chosen ? "1" : "0"});
    }
    if (selected.empty()) std::printf("%-8g nothing fits\n", m);
  }
  return kOk;
}

int synth(const SynthArgs& a) {
  const auto [train, test] = hdc::make_synthetic(a.spec);
  fs::create_directories(a.out_dir);
  hdc::write_csv(fs::path(a.out_dir) / "train.csv", train);
  hdc::write_csv(fs::path(a.out_dir) / "test.csv", test);
  std::printf("wrote %zu train and %zu test rows to %s\n", train.size(), test.size(), a.out_dir.c_str());
  return kOk;
}

void add_run_options(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--config", a.config, "experiment config or manifest (JSON)");
  cmd->add_option("--train-csv", a.train_csv);
  cmd->add_option("--test-csv", a.test_csv);
  cmd->add_option("--dim", a.dims, "hypervector dimension(s)");
  cmd->add_option("--m", a.budgets, "footprint budget(s)");
  cmd->add_option("--layers", a.layers, "fixed channel counts per layer")->delimiter(',');
  cmd->add_option("--latent-dim", a.latent_dim);
  cmd->add_option("--epochs", a.epochs);
  cmd->add_option("--lr", a.learning_rate);
  cmd->add_option("--batch-size", a.batch_size);
  cmd->add_option("--workers", a.workers);
  cmd->add_option("--seed", a.seed);
  cmd->add_option("--models", a.models)->delimiter(',');
  cmd->add_option("--precision", a.precisions)->delimiter(',');
  cmd->add_option("--out", a.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decomposed hyperdimensional classifiers"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "write a Gaussian-blob train/test pair");
  synth_cmd->add_option("--classes", synth_args.spec.classes);
  synth_cmd->add_option("--input-dim", synth_args.spec.input_dim);
  synth_cmd->add_option("--train-per-class", synth_args.spec.train_per_class);
  synth_cmd->add_option("--test-per-class", synth_args.spec.test_per_class);
  synth_cmd->add_option("--separation", synth_args.spec.separation);
  synth_cmd->add_option("--seed", synth_args.spec.seed);
  synth_cmd->add_option("--out", synth_args.out_dir);

  RunArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "train one dimension/budget point and save models");
  add_run_options(train_cmd, train_args);

  RunArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a full grid from a config");
  add_run_options(sweep_cmd, sweep_args);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "score a saved model on a CSV");
  eval_cmd->add_option("--model", eval_args.model)->required();
  eval_cmd->add_option("--data", eval_args.data)->required();
  eval_cmd->add_option("--mode", eval_args.mode, "auto|streamed_bundles|score_only|materialized_prototypes");
  eval_cmd->add_option("--memory-cap-bytes", eval_args.memory_cap_bytes, "cap used by --mode auto");
  eval_cmd->add_option("--precision", eval_args.precisions)->delimiter(',');
  eval_cmd->add_flag("--raw-inputs", eval_args.raw_inputs, "keep encoded inputs in fp32");

  RobustArgs robust_args;
  auto* robust_cmd = app.add_subcommand("robustness", "bit-flip sweep over saved models");
  robust_cmd->add_option("--model", robust_args.models)->required();
  robust_cmd->add_option("--data", robust_args.data)->required();
  robust_cmd->add_option("--p", robust_args.p_grid, "flip probabilities")->delimiter(',');
  robust_cmd->add_option("--trials", robust_args.trials);
  robust_cmd->add_option("--seed", robust_args.seed);
  robust_cmd->add_option("--out", robust_args.out);

  BudgetArgs budget_args;
  auto* budget_cmd = app.add_subcommand("budget", "enumerate channel tuples under a footprint budget");
  budget_cmd->add_option("--m", budget_args.budgets)->delimiter(',');
  budget_cmd->add_option("--classes", budget_args.classes);
  budget_cmd->add_option("--dim", budget_args.dim);
  budget_cmd->add_option("--d", budget_args.latent_dims, "latent size(s)")->delimiter(',');
  budget_cmd->add_option("--max-layers", budget_args.max_layers);
  budget_cmd->add_option("--max-channels", budget_args.max_channels);
  budget_cmd->add_option("--out", budget_args.out, "CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*synth_cmd) return synth(synth_args);
    if (*train_cmd) return run(train_args, true);
    if (*sweep_cmd) return run(sweep_args, false);
    if (*eval_cmd) return eval(eval_args);
    if (*robust_cmd) return robustness(robust_args);
    if (*budget_cmd) return budget(budget_args);
  } catch (const hdc::TrainingError& e) {
    std::fprintf(stderr, "training failed: %s\n", e.what());
    return kTraining;
  } catch (const hdc::DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const hdc::InputError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  } catch (const hdc::Error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kData;
  }
  return kConfig;
}
