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

#include "hdc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string_view>

#include "hdc/error.hpp"
#include "hdc/random.hpp"

namespace hdc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  return v;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  Dataset out;
  out.split = schema.split;
  out.name = schema.name.empty() ? path.stem().string() : schema.name;
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::string line;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_cells(line);
    std::vector<std::optional<double>> parsed;
    parsed.reserve(cells.size());
    bool all_numeric = true;
    for (auto c : cells) {
      parsed.push_back(parse_number(c));
      all_numeric = all_numeric && parsed.back().has_value();
    }
    if (first_content) {
      first_content = false;
      if (!all_numeric) {
        width = cells.size();
        continue;  // header row
      }
    }
    if (cells.size() < 2) throw ParseError(path.string(), line_no, "need at least one feature and a label");
    if (width == 0) width = cells.size();
    if (cells.size() != width) {
      throw ParseError(path.string(), line_no,
                       "ragged row: " + std::to_string(cells.size()) + " cells, expected " + std::to_string(width));
    }
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (!parsed[j]) throw ParseError(path.string(), line_no, "non-numeric cell '" + std::string(cells[j]) + "'");
    }
    const double label = *parsed.back();
    if (label < 0 || label != std::floor(label) || label > 1e9) {
      throw ParseError(path.string(), line_no, "label must be a non-negative integer");
    }
    if (schema.classes && label >= static_cast<double>(*schema.classes)) {
      throw ParseError(path.string(), line_no, "label " + std::to_string(static_cast<long long>(label)) +
                                                   " outside [0, " + std::to_string(*schema.classes) + ")");
    }
    for (std::size_t j = 0; j + 1 < cells.size(); ++j) values.push_back(*parsed[j]);
    out.labels.push_back(static_cast<int>(label));
  }
  if (out.labels.empty()) throw DataError(path.string() + ": no data rows");
  const std::size_t d_in = width - 1;
  out.features = Matrix<double>(out.labels.size(), d_in, std::move(values));
  if (schema.classes) {
    out.classes = *schema.classes;
  } else {
    out.classes = static_cast<std::size_t>(*std::max_element(out.labels.begin(), out.labels.end())) + 1;
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  for (std::size_t j = 0; j < data.input_dim(); ++j) out << 'f' << j << ',';
  out << "label\n";
  out << std::setprecision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.input_dim(); ++j) out << data.features(i, j) << ',';
    out << data.labels[i] << '\n';
  }
}

std::filesystem::path resolve_data_path(const std::filesystem::path& path) {
  if (path.is_absolute() || std::filesystem::exists(path)) return path;
  if (const char* dir = std::getenv(kDataDirEnv)) {
    auto candidate = std::filesystem::path(dir) / path;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return path;
}

std::string describe_layout(std::size_t input_dim, std::size_t classes) {
  struct Layout {
    std::size_t d_in, c;
    const char* name;
  };
  static constexpr Layout kLayouts[] = {
      {617, 26, "isolet"}, {261, 12, "ucihar"}, {561, 6, "ucihar-canonical"}, {75, 5, "pamap2"}, {10, 5, "page"},
  };
  for (const auto& l : kLayouts) {
    if (l.d_in == input_dim && l.c == classes) return l.name;
  }
  return "custom";
}

std::pair<Dataset, Dataset> make_synthetic(const SyntheticSpec& spec) {
  if (!(spec.separation >= 0.0)) throw DomainError("make_synthetic: separation must be >= 0");
  if (spec.classes < 2 || spec.input_dim < 1) throw DomainError("make_synthetic: need >= 2 classes and >= 1 feature");
  auto make = [&](std::size_t per_class, Split split, std::string_view role) {
    Dataset d;
    d.classes = spec.classes;
    d.split = split;
    d.name = "synthetic";
    RngStream rng(derive_seed(spec.seed, role));
    std::vector<double> values;
    values.reserve(per_class * spec.classes * spec.input_dim);
    for (std::size_t i = 0; i < per_class; ++i) {
      for (std::size_t c = 0; c < spec.classes; ++c) {
        const std::size_t axis = c % spec.input_dim;
        const double sign = (c / spec.input_dim) % 2 == 0 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < spec.input_dim; ++j) {
          const double centre = j == axis ? sign * spec.separation : 0.0;
          values.push_back(centre + rng.next_normal());
        }
        d.labels.push_back(static_cast<int>(c));
      }
    }
    d.features = Matrix<double>(d.labels.size(), spec.input_dim, std::move(values));
    return d;
  };
  return {make(spec.train_per_class, Split::kTrain, "synthetic-train"),
          make(spec.test_per_class, Split::kTest, "synthetic-test")};
}

namespace {

Dataset take_rows(const Dataset& data, const std::vector<std::size_t>& rows) {
  Dataset out;
  out.classes = data.classes;
  out.split = data.split;
  out.name = data.name;
  out.features = Matrix<double>(rows.size(), data.input_dim());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto src = data.features.row(rows[k]);
    std::copy(src.begin(), src.end(), out.features.row(k).begin());
    out.labels.push_back(data.labels[rows[k]]);
  }
  return out;
}

std::map<int, std::vector<std::size_t>> rows_by_class(const Dataset& data) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data.labels[i]].push_back(i);
  return by_class;
}

}  // namespace

Dataset stratified_subsample(const Dataset& data, std::size_t max_rows, std::uint64_t seed) {
  if (data.size() <= max_rows) return data;
  std::vector<std::size_t> keep;
  for (auto& [label, rows] : rows_by_class(data)) {
    RngStream rng(derive_seed(seed, "subsample", static_cast<std::uint64_t>(label)));
    rng.shuffle(std::span<std::size_t>(rows));
    const auto quota = static_cast<std::size_t>(
        std::floor(static_cast<double>(rows.size()) * static_cast<double>(max_rows) / static_cast<double>(data.size())));
    keep.insert(keep.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(std::min(quota, rows.size())));
  }
  std::sort(keep.begin(), keep.end());
  return take_rows(data, keep);
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw DomainError("stratified_split: fraction must be in (0, 1)");
  std::vector<std::size_t> train_rows, test_rows;
  for (auto& [label, rows] : rows_by_class(data)) {
    RngStream rng(derive_seed(seed, "split", static_cast<std::uint64_t>(label)));
    rng.shuffle(std::span<std::size_t>(rows));
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(rows.size())));
    test_rows.insert(test_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_test));
    train_rows.insert(train_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_test), rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(test_rows.begin(), test_rows.end());
  auto train = take_rows(data, train_rows);
  auto test = take_rows(data, test_rows);
  train.split = Split::kTrain;
  test.split = Split::kTest;
  return {std::move(train), std::move(test)};
}

}  // namespace hdc
