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
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "hdc/inference.hpp"
#include "hdc/random.hpp"

using hdc::InferenceMode;
using hdc::Matrix;

namespace {

bool close(const std::vector<double>& a, const std::vector<double>& b, double rel) {
  double scale = 0.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (std::abs(a[c] - b[c]) > rel * std::max(scale, 1e-30)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("all modes agree with logits in double") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto s = fixture::random_small<double>(seed);
    const auto bank = hdc::materialize_channels(s.params, s.projectors);
    const auto protos = hdc::materialize_prototypes(bank, s.params.head);
    for (std::size_t b = 0; b < s.x.rows(); ++b) {
      const auto h = s.x.row(b);
      const auto ref = hdc::logits<double>(h, bank, s.params.head);
      CHECK(close(hdc::stream_scores<double>(h, bank, s.params.head), ref, 1e-10));
      CHECK(close(hdc::stream_bundles<double>(h, bank, s.params.head), ref, 1e-10));
      CHECK(close(hdc::score_prototypes<double>(protos, h), ref, 1e-10));
    }
  }
}

TEST_CASE("all modes agree in float") {
  for (std::uint64_t seed = 200; seed < 230; ++seed) {
    const auto s = fixture::random_small<float>(seed);
    const auto bank = hdc::materialize_channels(s.params, s.projectors);
    for (auto mode : {InferenceMode::kStreamedBundles, InferenceMode::kScoreOnly,
                      InferenceMode::kMaterializedPrototypes}) {
      const hdc::DecomposedScorer<float> scorer(bank, s.params.head, mode);
      for (std::size_t b = 0; b < s.x.rows(); ++b) {
        const auto ref = hdc::stream_scores<float>(s.x.row(b), bank, s.params.head);
        CHECK(close(scorer.scores(s.x.row(b)), ref, 1e-5));
      }
    }
  }
}

TEST_CASE("single path streaming equals logits exactly") {
  auto s = fixture::random_small<double>(5);
  s.cfg.layers = {1};
  s.projectors = hdc::make_projectors<double>(s.cfg);
  s.params = hdc::init_params<double>(s.cfg, 1.0);
  s.params.head(0, 0) = 2.0;
  const auto bank = hdc::materialize_channels(s.params, s.projectors);
  const auto h = s.x.row(0);
  CHECK(hdc::stream_scores<double>(h, bank, s.params.head) == hdc::logits<double>(h, bank, s.params.head));
}

TEST_CASE("hand fixture scores") {
  hdc::ChannelBank<double> bank;
  bank.layers.push_back(Matrix<double>(2, 3));
  bank.layers[0](0, 0) = 1; bank.layers[0](0, 1) = -1; bank.layers[0](0, 2) = 1;
  bank.layers[0](1, 0) = 2; bank.layers[0](1, 1) = 0; bank.layers[0](1, 2) = 3;
  Matrix<double> head(2, 2);
  head(0, 0) = 1; head(0, 1) = 0; head(1, 0) = 0.5; head(1, 1) = 1;
  const std::vector<double> h{1, 2, 3};
  // h.h = [1,4,9]; <[1,-1,1],u> = 6; <[2,0,3],u> = 29.
  const std::vector<double> expected{6.0, 0.5 * 6 + 29};
  CHECK(hdc::stream_scores<double>(h, bank, head) == expected);
  CHECK(hdc::stream_bundles<double>(h, bank, head) == expected);
  CHECK(hdc::score_prototypes<double>(hdc::materialize_prototypes(bank, head), h) == expected);
}

TEST_CASE("zero head and uniform head edge cases") {
  const auto s = fixture::random_small<float>(9);
  const auto bank = hdc::materialize_channels(s.params, s.projectors);
  Matrix<float> zero(s.params.head.rows(), s.params.head.cols());
  for (double v : hdc::stream_scores<float>(s.x.row(0), bank, zero)) CHECK(v == 0.0);

  // M=1 with a column of ones: every class ties, so class 0 wins.
  hdc::ChannelBank<float> one;
  one.layers.push_back(Matrix<float>(1, bank.dim(), 0.5f));
  const Matrix<float> ones(s.params.head.rows(), 1, 1.0f);
  const hdc::DecomposedScorer<float> scorer(one, ones, InferenceMode::kScoreOnly);
  CHECK(scorer.predict_one(s.x.row(0)) == 0);

  const Matrix<float> uniform(3, bank.paths(), 1.0f / static_cast<float>(bank.paths()));
  const auto protos = hdc::materialize_prototypes(bank, uniform);
  CHECK(protos.row(0).size() == bank.dim());
  for (std::size_t j = 0; j < bank.dim(); ++j) {
    CHECK(protos(0, j) == protos(1, j));
    CHECK(protos(1, j) == protos(2, j));
  }
}

TEST_CASE("identity head on one layer selects channels") {
  hdc::ChannelBank<double> bank;
  bank.layers.push_back(Matrix<double>(3, 4));
  hdc::RngStream rng(1);
  for (auto& v : bank.layers[0].values()) v = rng.next_normal();
  Matrix<double> eye(3, 3);
  for (std::size_t c = 0; c < 3; ++c) eye(c, c) = 1.0;
  CHECK(hdc::materialize_prototypes(bank, eye) == bank.layers[0]);
}

TEST_CASE("score-only mode holds a single path buffer") {
  const auto s = fixture::random_small<float>(31, {64, 8, 3, 3, 4, 2});
  const auto bank = hdc::materialize_channels(s.params, s.projectors);
  hdc::inference_probe::reset();
  hdc::stream_scores<float>(s.x.row(0), bank, s.params.head);
  CHECK(hdc::inference_probe::hypervector_allocations() == 1);
  hdc::inference_probe::reset();
  hdc::stream_bundles<float>(s.x.row(0), bank, s.params.head);
  CHECK(hdc::inference_probe::hypervector_allocations() == s.params.head.rows() + 1);
}

TEST_CASE("memory estimates and mode choice") {
  CHECK(hdc::peak_memory_estimate(InferenceMode::kScoreOnly, 26, 10000) == 40000 + 104);
  CHECK(hdc::peak_memory_estimate(InferenceMode::kStreamedBundles, 26, 10000) == 27ull * 10000 * 4);
  CHECK(hdc::peak_memory_estimate(InferenceMode::kMaterializedPrototypes, 26, 10000) == 26ull * 10000 * 4);
  CHECK(hdc::choose_mode(26, 10000, 26ull * 10000 * 4) == InferenceMode::kMaterializedPrototypes);
  CHECK(hdc::choose_mode(26, 10000, 26ull * 10000 * 4 - 1) == InferenceMode::kScoreOnly);
  for (auto m : {InferenceMode::kStreamedBundles, InferenceMode::kScoreOnly, InferenceMode::kMaterializedPrototypes}) {
    CHECK(hdc::inference_mode_from_string(hdc::to_string(m)) == m);
  }
  CHECK_THROWS_AS(hdc::inference_mode_from_string("fast"), hdc::ConfigError);
}

TEST_CASE("shape errors") {
  const auto s = fixture::random_small<float>(3);
  const auto bank = hdc::materialize_channels(s.params, s.projectors);
  const Matrix<float> wrong(2, bank.paths() + 1);
  CHECK_THROWS_AS(hdc::stream_scores<float>(s.x.row(0), bank, wrong), hdc::DimensionError);
  const std::vector<float> short_h(bank.dim() + 1, 0.0f);
  CHECK_THROWS_AS(hdc::stream_scores<float>(short_h, bank, s.params.head), hdc::DimensionError);
}
