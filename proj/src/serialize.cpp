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

#include "hdc/serialize.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hdc/error.hpp"

namespace hdc {

static_assert(std::endian::native == std::endian::little, "container blobs assume a little-endian host");

using nlohmann::json;

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kDecomposed:
      return "decohd";
    case ModelKind::kPrototype:
      return "prototype";
    case ModelKind::kOnlineHD:
      return "onlinehd";
    case ModelKind::kSparse:
      return "sparsehd-style";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "decohd") return ModelKind::kDecomposed;
  if (name == "prototype") return ModelKind::kPrototype;
  if (name == "onlinehd") return ModelKind::kOnlineHD;
  if (name == "sparsehd-style") return ModelKind::kSparse;
  throw ConfigError("unknown model kind '" + name + "'");
}

namespace {

constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

}  // namespace

std::string base64_encode(const void* data, std::size_t bytes) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::string out;
  out.reserve((bytes + 2) / 3 * 4);
  for (std::size_t i = 0; i < bytes; i += 3) {
    const std::uint32_t b0 = p[i];
    const std::uint32_t b1 = i + 1 < bytes ? p[i + 1] : 0;
    const std::uint32_t b2 = i + 2 < bytes ? p[i + 2] : 0;
    const std::uint32_t v = (b0 << 16) | (b1 << 8) | b2;
    out.push_back(kAlphabet[(v >> 18) & 63]);
    out.push_back(kAlphabet[(v >> 12) & 63]);
    out.push_back(i + 1 < bytes ? kAlphabet[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < bytes ? kAlphabet[v & 63] : '=');
  }
  return out;
}

std::string base64_decode(const std::string& text) {
  std::array<int, 256> lookup;
  lookup.fill(-1);
  for (int i = 0; i < 64; ++i) lookup[static_cast<unsigned char>(kAlphabet[i])] = i;
  if (text.size() % 4 != 0) throw DataError("base64: length not a multiple of 4");
  std::string out;
  out.reserve(text.size() / 4 * 3);
  for (std::size_t i = 0; i < text.size(); i += 4) {
    std::uint32_t v = 0;
    int pad = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      const char ch = text[i + k];
      if (ch == '=') {
        ++pad;
        v <<= 6;
        continue;
      }
      const int d = lookup[static_cast<unsigned char>(ch)];
      if (d < 0 || pad > 0) throw DataError("base64: invalid character");
      v = (v << 6) | static_cast<std::uint32_t>(d);
    }
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    if (pad < 2) out.push_back(static_cast<char>((v >> 8) & 0xFF));
    if (pad < 1) out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

namespace {

template <typename T>
json blob(std::span<const T> values, std::size_t rows, std::size_t cols) {
  return json{{"dtype", sizeof(T) == 4 ? "f32" : "f64"},
              {"shape", {rows, cols}},
              {"data", base64_encode(values.data(), values.size_bytes())}};
}

template <typename T>
json blob(const Matrix<T>& m) {
  return blob<T>(m.values(), m.rows(), m.cols());
}

template <typename T>
json blob(const std::vector<T>& v) {
  return blob<T>(std::span<const T>(v), 1, v.size());
}

template <typename T>
Matrix<T> matrix_from(const json& j) {
  const std::string expected = sizeof(T) == 4 ? "f32" : "f64";
  if (j.at("dtype").get<std::string>() != expected) throw DataError("container: unexpected dtype");
  const auto rows = j.at("shape").at(0).get<std::size_t>();
  const auto cols = j.at("shape").at(1).get<std::size_t>();
  const auto bytes = base64_decode(j.at("data").get<std::string>());
  if (bytes.size() != rows * cols * sizeof(T)) throw DataError("container: blob size does not match shape");
  std::vector<T> values(rows * cols);
  if (!bytes.empty()) std::memcpy(values.data(), bytes.data(), bytes.size());
  return Matrix<T>(rows, cols, std::move(values));
}

template <typename T>
std::vector<T> vector_from(const json& j) {
  return matrix_from<T>(j).storage();
}

json encoder_json(const EncoderConfig& e) {
  return json{{"input_dim", e.input_dim},
              {"dim", e.dim},
              {"kind", to_string(e.kind)},
              {"seed", e.seed},
              {"normalize_output", e.normalize_output},
              {"ternary_zero_probability", e.ternary_zero_probability}};
}

EncoderConfig encoder_from(const json& j) {
  EncoderConfig e;
  e.input_dim = j.at("input_dim").get<std::size_t>();
  e.dim = j.at("dim").get<std::size_t>();
  e.kind = matrix_kind_from_string(j.at("kind").get<std::string>());
  e.seed = j.at("seed").get<std::uint64_t>();
  e.normalize_output = j.at("normalize_output").get<bool>();
  e.ternary_zero_probability = j.at("ternary_zero_probability").get<double>();
  return e;
}

}  // namespace

json to_json(const ModelContainer& c) {
  json doc;
  doc["format"] = kContainerFormat;
  doc["version"] = kContainerVersion;
  doc["kind"] = to_string(c.kind);
  doc["classes"] = c.classes;
  doc["encoder"] = encoder_json(c.encoder);
  doc["standardizer"] = {{"mean", blob(c.standardizer.mean)}, {"std", blob(c.standardizer.std)}};
  doc["metadata"] = c.metadata;
  if (c.kind == ModelKind::kDecomposed) {
    if (!c.model || !c.params) throw DomainError("container: decomposed model needs config and params");
    const auto& m = *c.model;
    json seeds = json::array();
    for (std::size_t i = 0; i < m.depth(); ++i) seeds.push_back(projector_seed(m, i));
    doc["model"] = {{"layers", m.layers},     {"latent_dim", m.latent_dim}, {"dim", m.dim},
                    {"classes", m.classes},   {"seed", m.seed},             {"projector_seeds", seeds},
                    {"path_order", "row-major, last layer fastest"}};
    json latents = json::array();
    for (const auto& l : c.params->latents) latents.push_back(blob(l));
    doc["params"] = {{"latents", latents}, {"head", blob(c.params->head)}};
  } else {
    if (!c.table) throw DomainError("container: table model needs prototypes");
    doc["table"] = blob(c.table->prototypes);
    if (c.kind == ModelKind::kSparse) {
      if (!c.mask) throw DomainError("container: sparse model needs a mask");
      doc["mask"] = {{"budget", c.mask->budget}, {"retained", c.mask->retained}};
    }
  }
  return doc;
}

ModelContainer container_from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kContainerFormat) throw DataError("container: wrong format tag");
    if (doc.at("version").get<int>() != kContainerVersion) throw DataError("container: unsupported version");
    ModelContainer c;
    c.kind = model_kind_from_string(doc.at("kind").get<std::string>());
    c.classes = doc.at("classes").get<std::size_t>();
    c.encoder = encoder_from(doc.at("encoder"));
    c.standardizer.mean = vector_from<double>(doc.at("standardizer").at("mean"));
    c.standardizer.std = vector_from<double>(doc.at("standardizer").at("std"));
    c.metadata = doc.value("metadata", json::object());
    if (c.kind == ModelKind::kDecomposed) {
      const auto& m = doc.at("model");
      ModelConfig cfg;
      cfg.layers = m.at("layers").get<std::vector<std::size_t>>();
      cfg.latent_dim = m.at("latent_dim").get<std::size_t>();
      cfg.dim = m.at("dim").get<std::size_t>();
      cfg.classes = m.at("classes").get<std::size_t>();
      cfg.seed = m.at("seed").get<std::uint64_t>();
      cfg.validate();
      const auto seeds = m.at("projector_seeds").get<std::vector<std::uint64_t>>();
      for (std::size_t i = 0; i < cfg.depth(); ++i) {
        if (i >= seeds.size() || seeds[i] != projector_seed(cfg, i)) {
          throw DataError("container: projector seeds do not match the model seed");
        }
      }
      ModelParams<float> params;
      for (const auto& l : doc.at("params").at("latents")) params.latents.push_back(matrix_from<float>(l));
      params.head = matrix_from<float>(doc.at("params").at("head"));
      check_params(cfg, params);
      c.model = cfg;
      c.params = std::move(params);
    } else {
      c.table = PrototypeTable{matrix_from<float>(doc.at("table"))};
      if (c.kind == ModelKind::kSparse) {
        SparseMask mask;
        mask.budget = doc.at("mask").at("budget").get<double>();
        mask.retained = doc.at("mask").at("retained").get<std::vector<std::size_t>>();
        mask.keep.assign(c.table->dim(), 0);
        for (std::size_t j : mask.retained) {
          if (j >= mask.keep.size()) throw DataError("container: mask index out of range");
          mask.keep[j] = 1;
        }
        c.mask = std::move(mask);
      }
    }
    return c;
  } catch (const json::exception& e) {
    throw DataError(std::string("container: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const ModelContainer& container) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << to_json(container).dump(1) << '\n';
}

ModelContainer load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return container_from_json(doc);
}

}  // namespace hdc
