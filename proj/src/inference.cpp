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

#include "hdc/inference.hpp"

#include "hdc/error.hpp"

namespace hdc {

std::string to_string(InferenceMode mode) {
  switch (mode) {
    case InferenceMode::kStreamedBundles:
      return "streamed_bundles";
    case InferenceMode::kScoreOnly:
      return "score_only";
    case InferenceMode::kMaterializedPrototypes:
      return "materialized_prototypes";
  }
  return "unknown";
}

InferenceMode inference_mode_from_string(const std::string& name) {
  if (name == "streamed_bundles") return InferenceMode::kStreamedBundles;
  if (name == "score_only") return InferenceMode::kScoreOnly;
  if (name == "materialized_prototypes") return InferenceMode::kMaterializedPrototypes;
  throw ConfigError("unknown inference mode '" + name + "'");
}

namespace inference_probe {
namespace {
thread_local std::size_t allocations = 0;
}
std::size_t hypervector_allocations() { return allocations; }
void reset() { allocations = 0; }
void record(std::size_t n) { allocations += n; }
}  // namespace inference_probe

std::uint64_t peak_memory_estimate(InferenceMode mode, std::size_t classes, std::size_t dim,
                                   std::size_t element_bytes) {
  const std::uint64_t c = classes, d = dim, w = element_bytes;
  switch (mode) {
    case InferenceMode::kScoreOnly:
      return (d + c) * w;
    case InferenceMode::kStreamedBundles:
      return (c + 1) * d * w;
    case InferenceMode::kMaterializedPrototypes:
      return c * d * w;
  }
  return 0;
}

InferenceMode choose_mode(std::size_t classes, std::size_t dim, std::uint64_t memory_cap_bytes,
                          std::size_t element_bytes) {
  const auto table = peak_memory_estimate(InferenceMode::kMaterializedPrototypes, classes, dim, element_bytes);
  return table <= memory_cap_bytes ? InferenceMode::kMaterializedPrototypes : InferenceMode::kScoreOnly;
}

}  // namespace hdc
