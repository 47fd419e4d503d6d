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

#include "hdc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

#include "hdc/csv.hpp"
#include "hdc/encoder.hpp"
#include "hdc/error.hpp"
#include "hdc/precision.hpp"
#include "hdc/random.hpp"
#include "hdc/serialize.hpp"

namespace hdc {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : obj.items()) {
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

SyntheticSpec synthetic_from(const json& j) {
  check_keys(j, {"classes", "input_dim", "train_per_class", "test_per_class", "separation", "seed"}, "data.synthetic");
  SyntheticSpec s;
  read(j, "classes", s.classes);
  read(j, "input_dim", s.input_dim);
  read(j, "train_per_class", s.train_per_class);
  read(j, "test_per_class", s.test_per_class);
  read(j, "separation", s.separation);
  read(j, "seed", s.seed);
  return s;
}

const std::set<std::string>& known_models() {
  static const std::set<std::string> k{"decohd", "prototype", "onlinehd", "sparsehd-style"};
  return k;
}

}  // namespace

ExperimentConfig experiment_config_from_json(const json& doc) {
  try {
    check_keys(doc,
               {"name", "data", "root_seed", "encoder", "dims", "budgets", "model", "train", "onlinehd", "models",
                "precisions", "quantize_inputs", "inference_mode", "robustness", "output_dir", "save_models"},
               "config");
    ExperimentConfig c;
    read(doc, "name", c.name);
    read(doc, "root_seed", c.root_seed);
    if (doc.contains("data")) {
      const auto& d = doc.at("data");
      check_keys(d, {"train_csv", "test_csv", "synthetic", "classes", "max_train_rows"}, "data");
      read(d, "train_csv", c.data.train_csv);
      read(d, "test_csv", c.data.test_csv);
      read(d, "max_train_rows", c.data.max_train_rows);
      if (d.contains("classes")) c.data.classes = d.at("classes").get<std::size_t>();
      if (d.contains("synthetic")) c.data.synthetic = synthetic_from(d.at("synthetic"));
    }
    if (!c.data.synthetic && (c.data.train_csv.empty() || c.data.test_csv.empty())) {
      throw ConfigError("data: need train_csv and test_csv, or a synthetic spec");
    }
    if (doc.contains("encoder")) {
      const auto& e = doc.at("encoder");
      check_keys(e, {"kind", "normalize"}, "encoder");
      if (e.contains("kind")) c.encoder_kind = matrix_kind_from_string(e.at("kind").get<std::string>());
      read(e, "normalize", c.normalize_encoding);
    }
    read(doc, "dims", c.dims);
    read(doc, "budgets", c.budgets);
    if (doc.contains("model")) {
      const auto& m = doc.at("model");
      check_keys(m, {"layers", "latent_dim", "max_layers", "max_channels"}, "model");
      read(m, "layers", c.layers);
      read(m, "latent_dim", c.latent_dim);
      read(m, "max_layers", c.max_layers);
      read(m, "max_channels", c.max_channels);
    }
    if (doc.contains("train")) {
      const auto& t = doc.at("train");
      check_keys(t,
                 {"learning_rate", "weight_decay", "epochs", "batch_size", "microbatch_size", "sigma_init", "beta1",
                  "beta2", "epsilon", "decay_latents", "decay_head", "workers", "max_steps"},
                 "train");
      read(t, "learning_rate", c.train.learning_rate);
      read(t, "weight_decay", c.train.weight_decay);
      read(t, "epochs", c.train.epochs);
      read(t, "batch_size", c.train.batch_size);
      read(t, "microbatch_size", c.train.microbatch_size);
      read(t, "sigma_init", c.train.sigma_init);
      read(t, "beta1", c.train.beta1);
      read(t, "beta2", c.train.beta2);
      read(t, "epsilon", c.train.epsilon);
      read(t, "decay_latents", c.train.decay_latents);
      read(t, "decay_head", c.train.decay_head);
      read(t, "workers", c.train.workers);
      if (t.contains("max_steps")) c.train.max_steps = t.at("max_steps").get<std::size_t>();
    }
    if (doc.contains("onlinehd")) {
      const auto& o = doc.at("onlinehd");
      check_keys(o, {"epochs", "learning_rate"}, "onlinehd");
      read(o, "epochs", c.onlinehd.epochs);
      read(o, "learning_rate", c.onlinehd.learning_rate);
    }
    read(doc, "models", c.models);
    read(doc, "precisions", c.precisions);
    read(doc, "quantize_inputs", c.quantize_inputs);
    if (doc.contains("inference_mode")) {
      c.inference_mode = inference_mode_from_string(doc.at("inference_mode").get<std::string>());
    }
    if (doc.contains("robustness")) {
      const auto& r = doc.at("robustness");
      check_keys(r, {"p_grid", "trials"}, "robustness");
      RobustnessConfig rc;
      read(r, "p_grid", rc.p_grid);
      read(r, "trials", rc.trials);
      if (rc.p_grid.empty() || rc.trials == 0) throw ConfigError("robustness: need a p_grid and trials >= 1");
      for (double p : rc.p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("robustness: p outside [0, 1]");
      }
      c.robustness = rc;
    }
    read(doc, "output_dir", c.output_dir);
    read(doc, "save_models", c.save_models);

    if (c.dims.empty()) throw ConfigError("dims: need at least one dimension");
    for (auto d : c.dims) {
      if (d == 0) throw ConfigError("dims: dimension must be >= 1");
    }
    if (c.budgets.empty()) throw ConfigError("budgets: need at least one budget");
    for (double m : c.budgets) {
      if (!(m > 0.0 && m <= 1.0)) throw ConfigError("budgets: every budget must be in (0, 1]");
    }
    if (c.models.empty()) throw ConfigError("models: need at least one model");
    for (const auto& m : c.models) {
      if (!known_models().count(m)) throw ConfigError("models: unknown model '" + m + "'");
    }
    if (c.precisions.empty()) throw ConfigError("precisions: need at least one format");
    for (const auto& p : c.precisions) format_from_name(p);
    c.train.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

json to_json(const ExperimentConfig& c) {
  json data{{"train_csv", c.data.train_csv}, {"test_csv", c.data.test_csv}, {"max_train_rows", c.data.max_train_rows}};
  if (c.data.classes) data["classes"] = *c.data.classes;
  if (c.data.synthetic) {
    const auto& s = *c.data.synthetic;
    data["synthetic"] = {{"classes", s.classes},
                         {"input_dim", s.input_dim},
                         {"train_per_class", s.train_per_class},
                         {"test_per_class", s.test_per_class},
                         {"separation", s.separation},
                         {"seed", s.seed}};
  }
  json train{{"learning_rate", c.train.learning_rate},
             {"weight_decay", c.train.weight_decay},
             {"epochs", c.train.epochs},
             {"batch_size", c.train.batch_size},
             {"microbatch_size", c.train.microbatch_size},
             {"sigma_init", c.train.sigma_init},
             {"beta1", c.train.beta1},
             {"beta2", c.train.beta2},
             {"epsilon", c.train.epsilon},
             {"decay_latents", c.train.decay_latents},
             {"decay_head", c.train.decay_head},
             {"workers", c.train.workers}};
  if (c.train.max_steps) train["max_steps"] = *c.train.max_steps;
  json doc{{"name", c.name},
           {"data", data},
           {"root_seed", c.root_seed},
           {"encoder", {{"kind", to_string(c.encoder_kind)}, {"normalize", c.normalize_encoding}}},
           {"dims", c.dims},
           {"budgets", c.budgets},
           {"model",
            {{"layers", c.layers},
             {"latent_dim", c.latent_dim},
             {"max_layers", c.max_layers},
             {"max_channels", c.max_channels}}},
           {"train", train},
           {"onlinehd", {{"epochs", c.onlinehd.epochs}, {"learning_rate", c.onlinehd.learning_rate}}},
           {"models", c.models},
           {"precisions", c.precisions},
           {"quantize_inputs", c.quantize_inputs},
           {"inference_mode", to_string(c.inference_mode)},
           {"output_dir", c.output_dir},
           {"save_models", c.save_models}};
  if (c.robustness) doc["robustness"] = {{"p_grid", c.robustness->p_grid}, {"trials", c.robustness->trials}};
  return doc;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("manifest_version")) return experiment_config_from_json(doc.at("config"));
  return experiment_config_from_json(doc);
}

std::string model_label(const std::string& kind, std::optional<double> budget) {
  return budget ? kind + "(" + format_number(*budget) + ")" : kind;
}

namespace {

bool wants(const ExperimentConfig& c, const std::string& model) {
  return std::find(c.models.begin(), c.models.end(), model) != c.models.end();
}

void write_results(const std::filesystem::path& dir, ExperimentResult& r) {
  std::sort(r.results.begin(), r.results.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.model, a.m_budget, a.precision, a.dim) < std::tie(b.model, b.m_budget, b.precision, b.dim);
  });
  std::sort(r.precision.begin(), r.precision.end(), [](const PrecisionRow& a, const PrecisionRow& b) {
    return std::tie(a.model_kind, a.format_name, a.dim) < std::tie(b.model_kind, b.format_name, b.dim);
  });
  CsvWriter results(dir / "results.csv", {"model", "m_budget", "precision", "D", "accuracy"});
  for (const auto& row : r.results) {
    results.write_row({row.model, format_number(row.m_budget), row.precision, std::to_string(row.dim),
                       format_number(row.accuracy)});
  }
  CsvWriter precision(dir / "precision.csv", {"model_kind", "format_name", "D", "test_accuracy"});
  for (const auto& row : r.precision) {
    precision.write_row({row.model_kind, row.format_name, std::to_string(row.dim), format_number(row.test_accuracy)});
  }
  if (!r.robustness.empty()) {
    CsvWriter robust(dir / "robustness.csv", {"model_kind", "p_flip", "trial", "test_accuracy"});
    for (const auto& row : r.robustness) {
      robust.write_row(
          {row.model_kind, format_number(row.p_flip), std::to_string(row.trial), format_number(row.test_accuracy)});
    }
  }
}

void write_history(const std::filesystem::path& path, const std::vector<EpochRecord>& history) {
  CsvWriter out(path, {"epoch", "mean_loss", "train_accuracy", "test_accuracy", "wall_seconds"});
  for (const auto& e : history) {
    out.write_row({std::to_string(e.epoch), format_number(e.mean_loss), format_number(e.train_accuracy),
                   format_number(e.test_accuracy), format_number(e.wall_seconds)});
  }
}

void write_manifest(const std::filesystem::path& dir, const json& manifest) {
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

Matrix<float> quantized_copy(const Matrix<float>& m, const PrecisionFormat& fmt) {
  Matrix<float> out = m;
  quantize_values(out.values(), fmt);
  return out;
}

double scorer_accuracy(const DeployedDecomposed& model, InferenceMode mode, const Matrix<float>& x,
                       std::span<const int> y) {
  if (x.rows() == 0) return 0.0;
  const DecomposedScorer<float> scorer(model.bank, model.head, mode);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    correct += scorer.predict_one(x.row(i)) == static_cast<std::size_t>(y[i]) ? 1 : 0;
  }
  return static_cast<double>(correct) / static_cast<double>(x.rows());
}

std::string file_tag(std::size_t dim, std::optional<double> budget) {
  std::string tag = "D" + std::to_string(dim);
  if (budget) tag += "_m" + format_number(*budget);
  return tag;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  namespace fs = std::filesystem;
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  ExperimentResult result;
  json& manifest = result.manifest;
  manifest["manifest_version"] = 1;
  manifest["config"] = to_json(cfg);
  manifest["status"] = "running";
  json seeds;
  seeds["root"] = cfg.root_seed;
  auto say = [&](const std::string& msg) {
    if (log) *log << msg << std::endl;
  };

  try {
    // Data.
    Dataset train_set, test_set;
    if (cfg.data.synthetic) {
      auto spec = *cfg.data.synthetic;
      std::tie(train_set, test_set) = make_synthetic(spec);
      seeds["synthetic"] = spec.seed;
    } else {
      CsvSchema schema;
      schema.classes = cfg.data.classes;
      schema.split = Split::kTrain;
      train_set = load_csv(resolve_data_path(cfg.data.train_csv), schema);
      if (!schema.classes) schema.classes = train_set.classes;
      schema.split = Split::kTest;
      test_set = load_csv(resolve_data_path(cfg.data.test_csv), schema);
      if (test_set.input_dim() != train_set.input_dim()) throw DataError("train and test feature counts differ");
    }
    const std::size_t classes = std::max(train_set.classes, test_set.classes);
    if (cfg.data.max_train_rows > 0 && train_set.size() > cfg.data.max_train_rows) {
      const auto seed = derive_seed(cfg.root_seed, "subsample");
      seeds["subsample"] = seed;
      train_set = stratified_subsample(train_set, cfg.data.max_train_rows, seed);
      result.warnings.push_back("training split subsampled to " + std::to_string(train_set.size()) + " rows");
    }
    manifest["data"] = {{"n_train", train_set.size()},
                        {"n_test", test_set.size()},
                        {"input_dim", train_set.input_dim()},
                        {"classes", classes},
                        {"layout", describe_layout(train_set.input_dim(), classes)}};
    say("data: " + std::to_string(train_set.size()) + " train / " + std::to_string(test_set.size()) + " test, d_in=" +
        std::to_string(train_set.input_dim()) + ", C=" + std::to_string(classes));

    const Standardizer standardizer = fit_standardizer(train_set.features);
    json runs = json::array();

    for (std::size_t dim : cfg.dims) {
      EncoderConfig enc_cfg;
      enc_cfg.input_dim = train_set.input_dim();
      enc_cfg.dim = dim;
      enc_cfg.kind = cfg.encoder_kind;
      enc_cfg.seed = derive_seed(cfg.root_seed, "encoder", dim);
      enc_cfg.normalize_output = cfg.normalize_encoding;
      seeds["encoder_D" + std::to_string(dim)] = enc_cfg.seed;
      const Encoder encoder(enc_cfg);
      const Matrix<float> train_x = encoder.encode_batch(train_set.features, standardizer);
      const Matrix<float> test_x = encoder.encode_batch(test_set.features, standardizer);
      say("encoded at D=" + std::to_string(dim));

      auto container_base = [&](ModelKind kind) {
        ModelContainer c;
        c.kind = kind;
        c.encoder = enc_cfg;
        c.standardizer = standardizer;
        c.classes = classes;
        return c;
      };

      // Baseline tables share this encoder.
      std::optional<PrototypeTable> table, refined;
      const bool need_refined = wants(cfg, "onlinehd") || wants(cfg, "sparsehd-style");
      if (wants(cfg, "prototype") || need_refined) {
        auto built = build_prototype_table(train_x, train_set.labels, classes);
        for (auto c : built.empty_classes) {
          result.warnings.push_back("class " + std::to_string(c) + " has no training samples (zero prototype)");
        }
        table = std::move(built.table);
      }
      if (need_refined) {
        RefineConfig rc = cfg.onlinehd;
        rc.seed = derive_seed(cfg.root_seed, "onlinehd", dim);
        seeds["onlinehd_D" + std::to_string(dim)] = rc.seed;
        refined = onlinehd_refine(*table, train_x, train_set.labels, rc);
        say("onlinehd refined at D=" + std::to_string(dim));
      }
      if (cfg.save_models) {
        if (wants(cfg, "prototype")) {
          auto c = container_base(ModelKind::kPrototype);
          c.table = *table;
          save_model(dir / ("model_prototype_" + file_tag(dim, std::nullopt) + ".json"), c);
        }
        if (wants(cfg, "onlinehd")) {
          auto c = container_base(ModelKind::kOnlineHD);
          c.table = *refined;
          save_model(dir / ("model_onlinehd_" + file_tag(dim, std::nullopt) + ".json"), c);
        }
      }

      struct Budgeted {
        double budget;
        std::optional<DeployedDecomposed> decomposed;
        std::optional<SparseTable> sparse;
      };
      std::vector<Budgeted> budgeted;
      for (std::size_t bi = 0; bi < cfg.budgets.size(); ++bi) {
        const double budget = cfg.budgets[bi];
        Budgeted b{budget, std::nullopt, std::nullopt};
        if (wants(cfg, "decohd")) {
          ModelConfig mc;
          mc.latent_dim = cfg.latent_dim;
          mc.dim = dim;
          mc.classes = classes;
          mc.seed = derive_seed(derive_seed(cfg.root_seed, "model", dim), "budget", bi);
          if (!cfg.layers.empty()) {
            mc.layers = cfg.layers;
          } else {
            BudgetQuery q;
            q.m_target = budget;
            q.classes = classes;
            q.dim = dim;
            q.max_layers = cfg.max_layers;
            q.max_channels = cfg.max_channels;
            mc.layers = select_layers(q);
            if (mc.layers.empty()) {
              throw ConfigError("no channel configuration fits budget " + format_number(budget) + " at D=" +
                                std::to_string(dim));
            }
          }
          const double fp = footprint(classes, dim, mc.layers);
          if (fp > budget) {
            result.warnings.push_back("fixed layers exceed budget " + format_number(budget) + " (footprint " +
                                      format_number(fp) + ")");
          }
          TrainConfig tc = cfg.train;
          tc.shuffle_seed = derive_seed(mc.seed, "shuffle");
          const std::string tag = file_tag(dim, budget);
          seeds["model_" + tag] = mc.seed;
          seeds["shuffle_" + tag] = tc.shuffle_seed;
          say("training decohd " + tag);
          auto trained = train<float>(train_x, train_set.labels, mc, tc, &test_x, test_set.labels,
                                      [&](const EpochRecord& e) {
                                        if (log && (e.epoch % 10 == 0 || e.epoch == 1)) {
                                          *log << "  epoch " << e.epoch << " loss " << e.mean_loss << " train "
                                               << e.train_accuracy << " test " << e.test_accuracy << std::endl;
                                        }
                                      });
          write_history(dir / ("history_" + tag + ".csv"), trained.history);
          if (cfg.save_models) {
            auto c = container_base(ModelKind::kDecomposed);
            c.model = mc;
            c.params = trained.params;
            c.metadata = {{"budget", budget}, {"footprint", fp}, {"steps", trained.steps},
                          {"diverged", trained.diverged}};
            save_model(dir / ("model_decohd_" + tag + ".json"), c);
          }
          if (trained.diverged) throw TrainingError(trained.message);
          DecomposedRun run;
          run.dim = dim;
          run.budget = budget;
          run.model = mc;
          run.footprint = fp;
          run.history = trained.history;
          run.final_test_accuracy = trained.history.empty() ? 0.0 : trained.history.back().test_accuracy;
          run.best_test_accuracy = trained.best_test_accuracy;
          run.best_epoch = trained.best_epoch;
          result.decomposed.push_back(run);
          runs.push_back({{"D", dim},
                          {"budget", budget},
                          {"layers", mc.layers},
                          {"latent_dim", mc.latent_dim},
                          {"footprint", fp},
                          {"paths", mc.paths()},
                          {"trainable_params", trainable_params(classes, mc.layers, mc.latent_dim)},
                          {"steps", trained.steps},
                          {"final_test_accuracy", run.final_test_accuracy},
                          {"best_test_accuracy", run.best_test_accuracy},
                          {"best_epoch", run.best_epoch}});
          const auto projectors = make_projectors<float>(mc);
          b.decomposed = DeployedDecomposed{materialize_channels<float>(trained.params, projectors), trained.params.head};
        }
        if (wants(cfg, "sparsehd-style")) {
          b.sparse = sparsify_table(*refined, budget);
          if (cfg.save_models) {
            auto c = container_base(ModelKind::kSparse);
            c.table = b.sparse->table;
            c.mask = b.sparse->mask;
            save_model(dir / ("model_sparsehd-style_" + file_tag(dim, budget) + ".json"), c);
          }
        }
        budgeted.push_back(std::move(b));
      }

      // Precision sweep: parameters and (optionally) inputs projected onto each grid.
      for (const auto& pname : cfg.precisions) {
        const auto fmt = format_from_name(pname);
        const Matrix<float> qx = cfg.quantize_inputs ? quantized_copy(test_x, fmt) : test_x;
        auto record = [&](const std::string& kind, std::optional<double> budget, double acc) {
          result.results.push_back({kind, budget.value_or(1.0), pname, dim, acc});
          result.precision.push_back({model_label(kind, budget), pname, dim, acc});
        };
        if (wants(cfg, "prototype")) {
          PrototypeTable t = *table;
          quantize_model(t, fmt);
          record("prototype", std::nullopt, table_accuracy(t, qx, test_set.labels));
        }
        if (wants(cfg, "onlinehd")) {
          PrototypeTable t = *refined;
          quantize_model(t, fmt);
          record("onlinehd", std::nullopt, table_accuracy(t, qx, test_set.labels));
        }
        for (const auto& b : budgeted) {
          if (b.decomposed) {
            DeployedDecomposed d = *b.decomposed;
            quantize_model(d, fmt);
            record("decohd", b.budget, scorer_accuracy(d, cfg.inference_mode, qx, test_set.labels));
          }
          if (b.sparse) {
            SparseTable s = *b.sparse;
            quantize_model(s.table, fmt);
            record("sparsehd-style", b.budget, table_accuracy(s, qx, test_set.labels));
          }
        }
      }

      if (cfg.robustness) {
        std::vector<SweepSubject> subjects;
        for (const auto& b : budgeted) {
          if (b.decomposed) subjects.push_back(decomposed_subject(model_label("decohd", b.budget), *b.decomposed, test_x, test_set.labels));
        }
        if (wants(cfg, "prototype")) subjects.push_back(table_subject("prototype", *table, test_x, test_set.labels));
        if (wants(cfg, "onlinehd")) subjects.push_back(table_subject("onlinehd", *refined, test_x, test_set.labels));
        const auto rseed = derive_seed(cfg.root_seed, "robustness", dim);
        seeds["robustness_D" + std::to_string(dim)] = rseed;
        say("robustness sweep at D=" + std::to_string(dim));
        auto rows = robustness_sweep(subjects, cfg.robustness->p_grid, cfg.robustness->trials, rseed);
        const auto summary = summarize(rows);
        for (auto& w : monotonicity_warnings(summary, 0.02)) result.warnings.push_back("robustness: " + w);
        if (cfg.dims.size() > 1) {
          for (auto& r : rows) r.model_kind += "@D" + std::to_string(dim);
        }
        result.robustness.insert(result.robustness.end(), rows.begin(), rows.end());
      }
    }

    std::stable_sort(result.robustness.begin(), result.robustness.end(), [](const RobustnessRow& a, const RobustnessRow& b) {
      return std::tie(a.model_kind, a.p_flip, a.trial) < std::tie(b.model_kind, b.p_flip, b.trial);
    });
    write_results(dir, result);
    manifest["seeds"] = seeds;
    manifest["decohd_runs"] = runs;
    manifest["warnings"] = result.warnings;
    manifest["status"] = "ok";
    write_manifest(dir, manifest);
    return result;
  } catch (const std::exception& e) {
    try {
      write_results(dir, result);
    } catch (...) {
    }
    manifest["seeds"] = seeds;
    manifest["warnings"] = result.warnings;
    manifest["status"] = "failed";
    manifest["error"] = e.what();
    write_manifest(dir, manifest);
    throw;
  }
}

}  // namespace hdc
