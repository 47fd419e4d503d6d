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

#include "hdc/core.hpp"

namespace hdc {

std::string to_string(MatrixKind kind) {
  return kind == MatrixKind::kGaussian ? "gaussian" : "ternary";
}

MatrixKind matrix_kind_from_string(const std::string& name) {
  if (name == "gaussian") return MatrixKind::kGaussian;
  if (name == "ternary") return MatrixKind::kTernary;
  throw ConfigError("unknown matrix kind '" + name + "' (expected gaussian or ternary)");
}

}  // namespace hdc
