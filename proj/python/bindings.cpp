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

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hdc/budget.hpp"
#include "hdc/dataset.hpp"
#include "hdc/deploy.hpp"
#include "hdc/error.hpp"
#include "hdc/experiment.hpp"
#include "hdc/precision.hpp"
#include "hdc/robustness.hpp"
#include "hdc/serialize.hpp"

namespace py = pybind11;

namespace {

using F32 = py::array_t<float, py::array::c_style | py::array::forcecast>;
using F64 = py::array_t<double, py::array::c_style | py::array::forcecast>;
using I32 = py::array_t<int, py::array::c_style | py::array::forcecast>;

template <typename T, typename A>
hdc::Matrix<T> to_matrix(const A& a, const char* what) {
  if (a.ndim() != 2) throw hdc::DimensionError(std::string(what) + " must be 2-D");
  const auto rows = static_cast<std::size_t>(a.shape(0)), cols = static_cast<std::size_t>(a.shape(1));
  return hdc::Matrix<T>(rows, cols, std::vector<T>(a.data(), a.data() + rows * cols));
}

template <typename T>
py::array_t<T> to_array(const hdc::Matrix<T>& m) {
  py::array_t<T> out({m.rows(), m.cols()});
  std::copy(m.data(), m.data() + m.rows() * m.cols(), out.mutable_data());
  return out;
}

std::vector<int> to_labels(const I32& y) {
  if (y.ndim() != 1) throw hdc::DimensionError("labels must be 1-D");
  return {y.data(), y.data() + y.size()};
}

py::array_t<int> labels_array(const std::vector<int>& y) {
  py::array_t<int> out(y.size());
  std::copy(y.begin(), y.end(), out.mutable_data());
  return out;
}

hdc::InferenceMode mode_of(const std::string& name) { return hdc::inference_mode_from_string(name); }

py::array_t<float> quantize_array(const F32& x, const std::string& format) {
  const auto fmt = hdc::format_from_name(format);
  py::array_t<float> out(std::vector<py::ssize_t>(x.shape(), x.shape() + x.ndim()));
  std::copy(x.data(), x.data() + x.size(), out.mutable_data());
  hdc::quantize_values({out.mutable_data(), static_cast<std::size_t>(out.size())}, fmt);
  return out;
}

py::tuple flip_bits(const F32& x, double p, std::uint64_t seed, std::uint64_t first_index) {
  py::array_t<float> out(std::vector<py::ssize_t>(x.shape(), x.shape() + x.ndim()));
  std::copy(x.data(), x.data() + x.size(), out.mutable_data());
  const auto flips = hdc::inject_bitflips({out.mutable_data(), static_cast<std::size_t>(out.size())},
                                          hdc::NoiseSpec{p, {}, seed}, first_index);
  return py::make_tuple(out, flips);
}

std::string run_experiment_json(const std::string& config, bool verbose) {
  const auto cfg = hdc::experiment_config_from_json(nlohmann::json::parse(config));
  const auto r = [&] {
    py::gil_scoped_release release;
    return hdc::run_experiment(cfg, verbose ? &std::cerr : nullptr);
  }();
  nlohmann::json out;
  for (const auto& row : r.results)
    out["results"].push_back(
        {{"model", row.model}, {"m_budget", row.m_budget}, {"precision", row.precision}, {"D", row.dim},
         {"accuracy", row.accuracy}});
  for (const auto& row : r.robustness)
    out["robustness"].push_back({{"model_kind", row.model_kind}, {"p_flip", row.p_flip}, {"trial", row.trial},
                                 {"test_accuracy", row.test_accuracy}});
  out["warnings"] = r.warnings;
  out["manifest"] = r.manifest;
  return out.dump();
}

py::list budget_table(double m, std::size_t classes, std::size_t dim, std::vector<std::size_t> latent_dims,
                      std::size_t max_layers, std::size_t max_channels) {
  hdc::BudgetQuery q;
  q.m_target = m;
  q.classes = classes;
  q.dim = dim;
  q.latent_dims = std::move(latent_dims);
  q.max_layers = max_layers;
  q.max_channels = max_channels;
  py::list out;
  for (const auto& r : hdc::enumerate_configs(q)) {
    py::dict row;
    row["layers"] = r.layers;
    row["latent_dim"] = r.latent_dim;
    row["footprint"] = r.m;
    row["paths"] = r.paths;
    row["trainable_params"] = r.trainable_params;
    row["savings"] = r.savings;
    out.append(row);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_hdc_decomp, m) {
  m.doc() = "Decomposed hyperdimensional classifiers";

  static py::exception<hdc::Error> base(m, "HdcError", PyExc_RuntimeError);
  py::register_exception<hdc::ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<hdc::DataError>(m, "DataError", base.ptr());
  py::register_exception<hdc::TrainingError>(m, "TrainingError", base.ptr());
  py::register_exception<hdc::InputError>(m, "InputError", base.ptr());
  py::register_exception<hdc::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<hdc::DomainError>(m, "DomainError", base.ptr());

  m.def("footprint", [](std::size_t classes, std::size_t dim, const std::vector<std::size_t>& layers) {
    return hdc::footprint(classes, dim, layers);
  }, py::arg("classes"), py::arg("dim"), py::arg("layers"));
  m.def("select_layers", [](double m_target, std::size_t classes, std::size_t dim, std::size_t max_layers,
                            std::size_t max_channels) {
    hdc::BudgetQuery q;
    q.m_target = m_target;
    q.classes = classes;
    q.dim = dim;
    q.max_layers = max_layers;
    q.max_channels = max_channels;
    return hdc::select_layers(q);
  }, py::arg("m"), py::arg("classes"), py::arg("dim"), py::arg("max_layers") = 3, py::arg("max_channels") = 5);
  m.def("budget_table", &budget_table, py::arg("m"), py::arg("classes"), py::arg("dim"),
        py::arg("latent_dims") = std::vector<std::size_t>{4096}, py::arg("max_layers") = 3,
        py::arg("max_channels") = 5);

  m.def("precision_formats", [] {
    std::vector<std::string> names;
    for (const auto& f : hdc::preset_formats()) names.push_back(f.name);
    return names;
  });
  m.def("quantize", &quantize_array, py::arg("x"), py::arg("format"),
        "Round float32 values onto a preset format grid (round to nearest even).");
  m.def("inject_bitflips", &flip_bits, py::arg("x"), py::arg("p"), py::arg("seed"), py::arg("first_index") = 0,
        "Returns (corrupted copy, number of flipped bits).");

  m.def("make_synthetic", [](std::size_t classes, std::size_t input_dim, std::size_t train_per_class,
                             std::size_t test_per_class, double separation, std::uint64_t seed) {
    const auto [train, test] = hdc::make_synthetic({classes, input_dim, train_per_class, test_per_class, separation, seed});
    return py::make_tuple(to_array(train.features), labels_array(train.labels), to_array(test.features),
                          labels_array(test.labels));
  }, py::arg("classes"), py::arg("input_dim"), py::arg("train_per_class") = 100, py::arg("test_per_class") = 50,
        py::arg("separation") = 4.0, py::arg("seed") = 0);
  m.def("load_csv", [](const std::string& path, std::optional<std::size_t> classes) {
    hdc::CsvSchema schema;
    schema.classes = classes;
    const auto d = hdc::load_csv(hdc::resolve_data_path(path), schema);
    return py::make_tuple(to_array(d.features), labels_array(d.labels), d.classes);
  }, py::arg("path"), py::arg("classes") = py::none());

  m.def("_run_experiment_json", &run_experiment_json, py::arg("config"), py::arg("verbose") = false);

  py::class_<hdc::DeployedModel>(m, "Model")
      .def_static("load", [](const std::string& path) { return hdc::DeployedModel(hdc::load_model(path)); })
      .def_property_readonly("kind", [](const hdc::DeployedModel& d) { return hdc::to_string(d.kind()); })
      .def_property_readonly("dim", [](const hdc::DeployedModel& d) { return d.encoder().dim(); })
      .def_property_readonly("classes", [](const hdc::DeployedModel& d) { return d.container().classes; })
      .def_property_readonly("metadata_json", [](const hdc::DeployedModel& d) { return d.container().metadata.dump(); })
      .def("encode", [](const hdc::DeployedModel& d, const F64& x) {
        return to_array(d.encode(to_matrix<double>(x, "features")));
      }, py::arg("features"))
      .def("scores", [](const hdc::DeployedModel& d, const F32& h, const std::string& mode) {
        return to_array(d.scores(to_matrix<float>(h, "encoded"), mode_of(mode)));
      }, py::arg("encoded"), py::arg("mode") = "materialized_prototypes")
      .def("predict", [](const hdc::DeployedModel& d, const F32& h, const std::string& mode) {
        const auto p = d.predict(to_matrix<float>(h, "encoded"), mode_of(mode));
        return std::vector<std::size_t>(p.begin(), p.end());
      }, py::arg("encoded"), py::arg("mode") = "materialized_prototypes")
      .def("accuracy", [](const hdc::DeployedModel& d, const F32& h, const I32& y, const std::string& mode,
                          const std::string& precision, bool quantize_inputs) {
        const auto labels = to_labels(y);
        return d.accuracy(to_matrix<float>(h, "encoded"), labels, mode_of(mode), hdc::format_from_name(precision),
                          quantize_inputs);
      }, py::arg("encoded"), py::arg("labels"), py::arg("mode") = "materialized_prototypes",
           py::arg("precision") = "fp32", py::arg("quantize_inputs") = true);
}
