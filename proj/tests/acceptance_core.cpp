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

// Property-based acceptance checks. One PASS/FAIL line per criterion; the
// exit status is the number of failures.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hdc/budget.hpp"
#include "hdc/experiment.hpp"
#include "hdc/inference.hpp"
#include "hdc/precision.hpp"
#include "hdc/robustness.hpp"
#include "hdc/training.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-34s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  failures += ok ? 0 : 1;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

void gradient_oracle() {
  const std::size_t instances = 60;
  double worst = 0.0;
  for (std::uint64_t seed = 1000; seed < 1000 + instances; ++seed) {
    const auto s = fixture::random_small<double>(seed);
    const auto grads = hdc::backward<double>(s.x, s.y, s.params, s.projectors);
    const auto fd = oracle::central_differences(fixture::to_oracle(s), fixture::rows_of(s.x), s.y, 1e-4);
    for (std::size_t i = 0; i < grads.latents.size(); ++i)
      for (std::size_t l = 0; l < grads.latents[i].rows(); ++l)
        for (std::size_t j = 0; j < grads.latents[i].cols(); ++j)
          worst = oracle::worst_error(grads.latents[i](l, j), fd.latents[i][l][j], 1e-8, worst);
    for (std::size_t c = 0; c < grads.head.rows(); ++c)
      for (std::size_t m = 0; m < grads.head.cols(); ++m)
        worst = oracle::worst_error(grads.head(c, m), fd.head[c][m], 1e-8, worst);
  }
  report(1, "gradient oracle", worst < 1e-4,
         fmt("%.0f instances, max relative error %.3g (< 1e-4)", static_cast<double>(instances), worst));
}

void mode_equivalence() {
  using hdc::InferenceMode;
  std::size_t argmax_mismatch = 0, inputs = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 2000; seed < 2100; ++seed) {
    const auto s = fixture::random_small<float>(seed);
    const auto bank = hdc::materialize_channels(s.params, s.projectors);
    const hdc::DecomposedScorer<float> streamed(bank, s.params.head, InferenceMode::kStreamedBundles);
    const hdc::DecomposedScorer<float> score_only(bank, s.params.head, InferenceMode::kScoreOnly);
    const hdc::DecomposedScorer<float> materialized(bank, s.params.head, InferenceMode::kMaterializedPrototypes);
    for (std::size_t b = 0; b < s.x.rows(); ++b, ++inputs) {
      const auto h = s.x.row(b);
      const auto a = streamed.scores(h), c = score_only.scores(h), p = materialized.scores(h);
      double scale = 1e-30;
      for (double v : a) scale = std::max(scale, std::abs(v));
      for (std::size_t k = 0; k < a.size(); ++k)
        worst = std::max({worst, std::abs(a[k] - c[k]) / scale, std::abs(a[k] - p[k]) / scale});
      const auto ia = hdc::predict(a), ic = hdc::predict(c), ip = hdc::predict(p);
      argmax_mismatch += (ia != ic || ia != ip) ? 1 : 0;
    }
  }
  report(2, "inference-mode equivalence", argmax_mismatch == 0 && worst < 1e-5,
         fmt("100 models, %.0f inputs, %.0f argmax mismatches, max relative score gap %.3g (< 1e-5)",
             static_cast<double>(inputs), static_cast<double>(argmax_mismatch), worst));
}

void materialization_identity() {
  // Small integers keep every intermediate exact in double.
  std::size_t cases = 0, mismatches = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    hdc::RngStream rng(hdc::derive_seed(seed, "integer-fixture"));
    auto small_int = [&](int span) { return static_cast<double>(static_cast<int>(rng.next_below(2 * span + 1)) - span); };
    const std::size_t dim = 2 + rng.next_below(7), depth = 1 + rng.next_below(3), classes = 2 + rng.next_below(3);
    hdc::ChannelBank<double> bank;
    for (std::size_t i = 0; i < depth; ++i) {
      hdc::Matrix<double> layer(1 + rng.next_below(3), dim);
      for (auto& v : layer.values()) v = small_int(3);
      bank.layers.push_back(layer);
    }
    hdc::Matrix<double> head(classes, bank.paths());
    for (auto& v : head.values()) v = small_int(4);
    const auto prototypes = hdc::materialize_prototypes(bank, head);
    std::vector<double> h(dim);
    for (auto& v : h) v = small_int(5);
    const auto bundled = hdc::stream_bundles<double>(h, bank, head);
    const auto materialized = hdc::score_prototypes<double>(prototypes, h);
    ++cases;
    mismatches += bundled == materialized ? 0 : 1;
  }
  report(3, "prototype materialization identity", mismatches == 0,
         fmt("%.0f integer fixtures, %.0f inexact", static_cast<double>(cases), static_cast<double>(mismatches)));
}

void budget_formula() {
  const std::vector<std::size_t> layers{10};
  const double m = hdc::footprint(26, 10000, layers);
  const bool exact = m == 100260.0 / 260000.0;
  const double truncated = std::floor(m * 100.0) / 100.0;
  const double nearest = std::round(m * 100.0) / 100.0;
  // The reported 0.38 is the two-decimal truncation; nearest rounding gives 0.39.
  report(4, "budget formula", exact && std::abs(truncated - 0.38) < 1e-12,
         fmt("m = %.6f; two decimals: truncated %.2f (reported 0.38), nearest %.2f", m, truncated, nearest));
}

float random_float(hdc::RngStream& rng, double spread) {
  const double mag = std::exp2((rng.next_uniform() * 2.0 - 1.0) * spread);
  return static_cast<float>(rng.next_uniform() < 0.5 ? -mag : mag);
}

void quantizer() {
  hdc::RngStream rng(hdc::derive_seed(5, "quantizer"));
  std::vector<float> xs(1000000);
  for (auto& x : xs) x = random_float(rng, 60.0);
  std::sort(xs.begin(), xs.end());
  std::string bad;
  for (const auto& f : hdc::preset_formats()) {
    bool idempotent = true, monotone = true;
    float prev = -std::numeric_limits<float>::infinity();
    for (float x : xs) {
      const float q = hdc::quantize(x, f);
      idempotent = idempotent && hdc::quantize(q, f) == q;
      monotone = monotone && q >= prev;
      prev = q;
    }
    if (!idempotent) bad += " " + f.name + ":idempotence";
    if (!monotone) bad += " " + f.name + ":monotonicity";
  }

  const auto e4m3 = hdc::formats::fp8_e4m3fn();
  std::size_t finite = 0, off_grid = 0;
  double top = 0.0;
  std::vector<float> grid;
  for (unsigned code = 0; code < 256; ++code) {
    const unsigned e = (code >> 3) & 0xF, mant = code & 0x7;
    if (e == 15 && mant == 7) continue;
    const double mag = e == 0 ? std::ldexp(mant / 8.0, -6) : std::ldexp(1.0 + mant / 8.0, static_cast<int>(e) - 7);
    const auto v = static_cast<float>((code & 0x80) ? -mag : mag);
    ++finite;
    top = std::max(top, mag);
    off_grid += hdc::quantize(v, e4m3) == v ? 0 : 1;
    grid.push_back(v);
  }
  // Every quantized sample must land on an enumerated code.
  std::sort(grid.begin(), grid.end());
  std::size_t escaped = 0;
  for (std::size_t i = 0; i < xs.size(); i += 7) {
    const float q = hdc::quantize(xs[i], e4m3);
    escaped += std::binary_search(grid.begin(), grid.end(), q) ? 0 : 1;
  }
  const bool ok = bad.empty() && finite == 254 && top == 448.0 && off_grid == 0 && escaped == 0;
  report(5, "quantizer", ok,
         "1e6 values x " + std::to_string(hdc::preset_formats().size()) + " presets" +
             (bad.empty() ? std::string(" idempotent and monotone") : bad) +
             fmt("; e4m3fn: %.0f finite codes, max %.0f, %.0f off-grid outputs", static_cast<double>(finite), top,
                 static_cast<double>(off_grid + escaped)));
}

void bitflips() {
  std::vector<float> v(4096);
  hdc::RngStream rng(hdc::derive_seed(6, "bitflip"));
  for (auto& x : v) x = static_cast<float>(rng.next_normal());
  auto bits = [](const std::vector<float>& a) {
    std::vector<std::uint32_t> out;
    for (float x : a) out.push_back(std::bit_cast<std::uint32_t>(x));
    return out;
  };
  const auto before = bits(v);
  const bool zero_ok = hdc::inject_bitflips(v, hdc::NoiseSpec{0.0, {}, 11}) == 0 && bits(v) == before;
  const auto once = hdc::inject_bitflips(v, hdc::NoiseSpec{1.0, {}, 12});
  bool all_inverted = once == 32 * v.size();
  for (std::size_t i = 0; i < v.size(); ++i) all_inverted = all_inverted && bits(v)[i] == ~before[i];
  hdc::inject_bitflips(v, hdc::NoiseSpec{1.0, {}, 13});
  const bool involution = all_inverted && bits(v) == before;

  std::vector<float> big(1000000, 1.0f);
  const double n = 32.0 * big.size(), p = 0.01;
  const auto flipped = static_cast<double>(hdc::inject_bitflips(big, hdc::NoiseSpec{p, {}, 14}));
  const double z = (flipped - n * p) / std::sqrt(n * p * (1 - p));
  report(6, "bit-flip injector", zero_ok && involution && std::abs(z) < 3.0,
         std::string("p=0 identity ") + (zero_ok ? "ok" : "broken") + ", p=1 involution " +
             (involution ? "ok" : "broken") + fmt(", p=0.01 flips %.0f of %.0f bits (z = %.2f, |z| < 3)", flipped, n, z));
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Wall-clock seconds are the only nondeterministic column.
std::string without_last_column(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

void determinism() {
  const auto root = fs::temp_directory_path() / "hdc_acceptance_determinism";
  fs::remove_all(root);
  const auto a = root / "a", b = root / "b";
  const nlohmann::json doc = {
      {"name", "determinism"},
      {"root_seed", 20240},
      {"data", {{"synthetic", {{"classes", 4}, {"input_dim", 12}, {"train_per_class", 60}, {"test_per_class", 20},
                               {"separation", 4.0}, {"seed", 3}}}}},
      {"dims", {256}},
      {"budgets", {0.5, 0.7}},
      {"model", {{"latent_dim", 32}}},
      {"train", {{"epochs", 5}, {"batch_size", 32}, {"microbatch_size", 8}, {"workers", 3}}},
      {"onlinehd", {{"epochs", 5}}},
      {"precisions", {"fp32", "bf16", "fp8_e4m3fn"}},
      {"robustness", {{"p_grid", {0.0, 0.001, 0.01}}, {"trials", 3}}},
      {"output_dir", a.string()}};
  hdc::run_experiment(hdc::experiment_config_from_json(doc));
  auto again = hdc::load_experiment_config(a / "manifest.json");
  again.output_dir = b.string();
  hdc::run_experiment(again);

  std::size_t compared = 0;
  std::vector<std::string> differing;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto name = entry.path().filename().string();
    if (name == "manifest.json") continue;
    std::string x = slurp(entry.path()), y = slurp(b / name);
    if (name.rfind("history_", 0) == 0) {
      x = without_last_column(x);
      y = without_last_column(y);
    }
    ++compared;
    if (x != y || x.empty()) differing.push_back(name);
  }
  // The manifests differ only in the output directory.
  auto ma = nlohmann::json::parse(slurp(a / "manifest.json")), mb = nlohmann::json::parse(slurp(b / "manifest.json"));
  ma["config"].erase("output_dir");
  mb["config"].erase("output_dir");
  ++compared;
  if (ma != mb) differing.push_back("manifest.json");
  std::string detail = std::to_string(compared) + " output files compared";
  for (const auto& d : differing) detail += ", differs: " + d;
  report(7, "determinism", differing.empty() && compared >= 10, detail);
  fs::remove_all(root);
}

template <typename F>
void guarded(int id, const char* name, F&& check) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    check();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("threw: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("       (%.2f s)\n", secs);
}

}  // namespace

int main() {
  guarded(1, "gradient oracle", gradient_oracle);
  guarded(2, "inference-mode equivalence", mode_equivalence);
  guarded(3, "prototype materialization identity", materialization_identity);
  guarded(4, "budget formula", budget_formula);
  guarded(5, "quantizer", quantizer);
  guarded(6, "bit-flip injector", bitflips);
  guarded(7, "determinism", determinism);
  std::printf("%d of 7 core criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
