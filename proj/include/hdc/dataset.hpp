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

#ifndef HDC_DATASET_HPP
#define HDC_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hdc/matrix.hpp"

namespace hdc {

enum class Split { kTrain, kTest };

struct Dataset {
  Matrix<double> features;  // n x d_in
  std::vector<int> labels;  // n, in [0, classes)
  std::size_t classes = 0;
  Split split = Split::kTrain;
  std::string name;

  std::size_t size() const { return labels.size(); }
  std::size_t input_dim() const { return features.cols(); }
};

struct CsvSchema {
  /// When set, labels must lie in [0, classes); otherwise C = max label + 1.
  std::optional<std::size_t> classes;
  Split split = Split::kTrain;
  std::string name;
};

/// Numeric rows with the integer label in the last column. A first row with
/// any non-numeric cell is treated as a header.
Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema = {});

void write_csv(const std::filesystem::path& path, const Dataset& data);

/// Relative paths are looked up under $HDC_DATA_DIR when set and the path
/// does not exist as given.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);
inline constexpr const char* kDataDirEnv = "HDC_DATA_DIR";

/// Name of the benchmark layout matching (d_in, C), or "custom".
/// UCIHAR is accepted both as 261 x 12 and in its canonical 561 x 6 form.
std::string describe_layout(std::size_t input_dim, std::size_t classes);

struct SyntheticSpec {
  std::size_t classes = 2;
  std::size_t input_dim = 8;
  std::size_t train_per_class = 100;
  std::size_t test_per_class = 50;
  double separation = 4.0;
  std::uint64_t seed = 0;
};

/// Gaussian blobs with unit noise. Class c is centred at separation * s_c *
/// e_{c mod d_in}, where s_c = +1 for the first pass over the axes and -1
/// for the second, and so on alternating.
std::pair<Dataset, Dataset> make_synthetic(const SyntheticSpec& spec);

/// Keeps at most `max_rows` rows, allocating per class in proportion to class
/// frequency. Returns the data unchanged when it already fits.
Dataset stratified_subsample(const Dataset& data, std::size_t max_rows, std::uint64_t seed);

/// Per-class seeded split into (train, test) with `test_fraction` of each class held out.
std::pair<Dataset, Dataset> stratified_split(const Dataset& data, double test_fraction, std::uint64_t seed);

}  // namespace hdc

#endif  // HDC_DATASET_HPP
