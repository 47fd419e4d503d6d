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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "hdc/encoder.hpp"
#include "hdc/random.hpp"

namespace {

hdc::Matrix<double> rows(std::initializer_list<std::vector<double>> data) {
  const std::size_t cols = data.begin()->size();
  hdc::Matrix<double> m(data.size(), cols);
  std::size_t r = 0;
  for (const auto& row : data) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
    ++r;
  }
  return m;
}

double norm(const std::vector<float>& h) {
  double s = 0.0;
  for (float v : h) s += static_cast<double>(v) * v;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("standardizer examples") {
  const auto s = hdc::fit_standardizer(rows({{0}, {2}}));
  CHECK(s.mean == std::vector<double>{1.0});
  CHECK(s.std == std::vector<double>{1.0});

  const auto constant = hdc::fit_standardizer(rows({{5, 1}, {5, 3}, {5, 8}}));
  CHECK(constant.std[0] == 1.0);
  CHECK(constant.mean[0] == 5.0);

  // A column that is already standardized (population std) stays put.
  const auto z = hdc::fit_standardizer(rows({{-1}, {1}, {-1}, {1}}));
  CHECK(std::abs(z.mean[0]) < 1e-9);
  CHECK(std::abs(z.std[0] - 1.0) < 1e-9);

  CHECK_THROWS_AS(hdc::fit_standardizer(rows({{1, 2}})), hdc::DomainError);
}

TEST_CASE("fitted std is always positive") {
  hdc::RngStream rng(3);
  hdc::Matrix<double> x(20, 6);
  for (auto& v : x.values()) v = rng.next_normal();
  for (std::size_t r = 0; r < 20; ++r) x(r, 2) = 4.0;
  const auto s = hdc::fit_standardizer(x);
  for (double v : s.std) CHECK(v > 0.0);
}

TEST_CASE("encoding the mean without normalization gives zero") {
  hdc::EncoderConfig cfg{3, 64, hdc::MatrixKind::kGaussian, 5, false};
  const hdc::Encoder enc(cfg);
  const hdc::Standardizer s{{1.0, -2.0, 0.5}, {2.0, 1.0, 3.0}};
  const auto h = enc.encode(std::vector<double>{1.0, -2.0, 0.5}, s);
  for (float v : h) CHECK(v == 0.0f);

  // The zero vector passes through normalization unchanged.
  cfg.normalize_output = true;
  const auto h2 = hdc::Encoder(cfg).encode(std::vector<double>{1.0, -2.0, 0.5}, s);
  for (float v : h2) CHECK(v == 0.0f);
}

TEST_CASE("normalized encodings have unit norm") {
  const hdc::EncoderConfig cfg{5, 500, hdc::MatrixKind::kTernary, 8};
  const hdc::Encoder enc(cfg);
  const hdc::Standardizer s{std::vector<double>(5, 0.0), std::vector<double>(5, 1.0)};
  hdc::RngStream rng(1);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> x(5);
    for (auto& v : x) v = rng.next_normal() * 10.0;
    CHECK(std::abs(norm(enc.encode(x, s)) - 1.0) < 1e-6);
  }
}

TEST_CASE("hand projection through the test hook") {
  hdc::EncoderConfig cfg{2, 2, hdc::MatrixKind::kGaussian, 0, false};
  hdc::Matrix<float> identity(2, 2);
  identity(0, 0) = identity(1, 1) = 1.0f;
  const hdc::Standardizer s{{1.0, 1.0}, {2.0, 0.5}};
  // (x - mean) / std = [3, 4]
  const std::vector<double> x{7.0, 3.0};
  const auto raw = hdc::Encoder::with_matrix(cfg, identity).encode(x, s);
  CHECK(raw == std::vector<float>{3.0f, 4.0f});
  cfg.normalize_output = true;
  const auto unit = hdc::Encoder::with_matrix(cfg, identity).encode(x, s);
  CHECK(unit[0] == doctest::Approx(0.6).epsilon(1e-7));
  CHECK(unit[1] == doctest::Approx(0.8).epsilon(1e-7));
}

TEST_CASE("encoder errors and determinism") {
  const hdc::EncoderConfig cfg{3, 32, hdc::MatrixKind::kGaussian, 12};
  const hdc::Encoder a(cfg), b(cfg);
  CHECK(a.projection() == b.projection());
  const hdc::Standardizer s{std::vector<double>(3, 0.0), std::vector<double>(3, 1.0)};
  const std::vector<double> x{0.3, -1.0, 2.0};
  CHECK(a.encode(x, s) == b.encode(x, s));
  CHECK_THROWS_AS(a.encode(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN(), 0.0}, s),
                  hdc::InputError);
  CHECK_THROWS_AS(a.encode(std::vector<double>{1.0, 2.0}, s), hdc::DimensionError);

  hdc::Matrix<double> batch(4, 3);
  hdc::RngStream rng(2);
  for (auto& v : batch.values()) v = rng.next_normal();
  const auto encoded = a.encode_batch(batch, s);
  for (std::size_t r = 0; r < 4; ++r) {
    const auto one = a.encode(batch.row(r), s);
    for (std::size_t j = 0; j < 32; ++j) CHECK(encoded(r, j) == one[j]);
  }
}

TEST_CASE("positive rescaling of the standardized input keeps the direction") {
  const hdc::EncoderConfig cfg{4, 128, hdc::MatrixKind::kGaussian, 21};
  const hdc::Encoder enc(cfg);
  const hdc::Standardizer s{std::vector<double>(4, 0.0), std::vector<double>(4, 1.0)};
  const std::vector<double> x{0.5, -1.5, 2.0, 0.25};
  std::vector<double> x3 = x;
  for (auto& v : x3) v *= 3.0;
  const auto h = enc.encode(x, s), h3 = enc.encode(x3, s);
  for (std::size_t j = 0; j < h.size(); ++j) CHECK(h3[j] == doctest::Approx(h[j]).epsilon(1e-5));
}
