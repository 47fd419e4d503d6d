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

#ifndef HDC_SERIALIZE_HPP
#define HDC_SERIALIZE_HPP

// Model container: a JSON document whose numeric arrays are base64-encoded
// little-endian IEEE-754 blobs, so round trips are bit-exact (NaN payloads
// included). Frozen random matrices are not stored, only their seeds.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "hdc/baselines.hpp"
#include "hdc/encoder.hpp"
#include "hdc/model.hpp"

namespace hdc {

enum class ModelKind { kDecomposed, kPrototype, kOnlineHD, kSparse };

/// "decohd", "prototype", "onlinehd", "sparsehd-style".
std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

inline constexpr const char* kContainerFormat = "hdc-model";
inline constexpr int kContainerVersion = 1;

struct ModelContainer {
  ModelKind kind = ModelKind::kDecomposed;
  EncoderConfig encoder;
  Standardizer standardizer;
  std::size_t classes = 0;

  // kDecomposed
  std::optional<ModelConfig> model;
  std::optional<ModelParams<float>> params;

  // kPrototype, kOnlineHD, kSparse
  std::optional<PrototypeTable> table;
  std::optional<SparseMask> mask;

  nlohmann::json metadata = nlohmann::json::object();
};

nlohmann::json to_json(const ModelContainer& container);
ModelContainer container_from_json(const nlohmann::json& doc);

void save_model(const std::filesystem::path& path, const ModelContainer& container);
ModelContainer load_model(const std::filesystem::path& path);

std::string base64_encode(const void* data, std::size_t bytes);
std::string base64_decode(const std::string& text);

}  // namespace hdc

#endif  // HDC_SERIALIZE_HPP
