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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "doctest.h"
#include "hdc/error.hpp"
#include "hdc/precision.hpp"
#include "hdc/random.hpp"

namespace {

// Independent decoder: every non-negative finite value a format can encode.
std::vector<double> positive_grid(const hdc::PrecisionFormat& f) {
  std::vector<double> grid;
  const int top = (1 << f.exponent_bits) - 1;
  const int mcount = 1 << f.mantissa_bits;
  for (int e = 0; e <= top; ++e) {
    for (int m = 0; m < mcount; ++m) {
      if (!f.finite_only && e == top) continue;                        // inf / NaN codes
      if (f.finite_only && f.reserves_nan && e == top && m == mcount - 1) continue;
      const double frac = static_cast<double>(m) / mcount;
      grid.push_back(e == 0 ? std::ldexp(frac, 1 - f.bias) : std::ldexp(1.0 + frac, e - f.bias));
    }
  }
  return grid;
}

// Nearest grid value with ties to the even code (grid index parity matches
// mantissa parity because codes are enumerated in order).
double nearest(const std::vector<double>& grid, const hdc::PrecisionFormat& f, double x) {
  const double a = std::abs(x);
  const double max = grid.back();
  double r;
  if (a >= max) {
    const double half_ulp = (max - grid[grid.size() - 2]) / 2.0;
    r = (f.finite_only || a < max + half_ulp) ? max : std::numeric_limits<double>::infinity();
  } else {
    const auto hi = std::upper_bound(grid.begin(), grid.end(), a);
    const auto lo = hi - 1;
    const double dl = a - *lo, dh = *hi - a;
    if (dl < dh) r = *lo;
    else if (dh < dl) r = *hi;
    else r = ((lo - grid.begin()) % 2 == 0) ? *lo : *hi;
  }
  return std::copysign(r, x);
}

float random_float(hdc::RngStream& rng, double spread) {
  // Log-uniform magnitudes spanning sub-grid to overflow, random sign.
  const double mag = std::exp2((rng.next_uniform() * 2.0 - 1.0) * spread);
  return static_cast<float>(rng.next_uniform() < 0.5 ? -mag : mag);
}

}  // namespace

TEST_CASE("named examples") {
  for (const auto& f : hdc::preset_formats()) CHECK(hdc::quantize(1.0f, f) == 1.0f);
  const auto e4m3 = hdc::formats::fp8_e4m3fn();
  CHECK(hdc::quantize(448.0f, e4m3) == 448.0f);
  CHECK(hdc::quantize(1000.0f, e4m3) == 448.0f);
  CHECK(hdc::quantize(-1e30f, e4m3) == -448.0f);
  CHECK(hdc::quantize(std::numeric_limits<float>::infinity(), e4m3) == 448.0f);
  CHECK(e4m3.max_finite() == 448.0);
  CHECK(hdc::formats::fp4_e2m1().max_finite() == 6.0);
  CHECK(hdc::formats::fp8_e5m2().max_finite() == 57344.0);
  CHECK(hdc::formats::fp16().max_finite() == 65504.0);
  CHECK(std::isinf(hdc::quantize(70000.0f, hdc::formats::fp16())));
  CHECK(std::isnan(hdc::quantize(std::numeric_limits<float>::quiet_NaN(), hdc::formats::fp16())));
  CHECK(hdc::format_from_name("bf16").mantissa_bits == 7);
  CHECK_THROWS_AS(hdc::format_from_name("fp6"), hdc::ConfigError);
}

TEST_CASE("fp32 is the identity on every bit pattern sampled") {
  hdc::RngStream rng(1);
  const auto f = hdc::formats::fp32();
  for (int i = 0; i < 100000; ++i) {
    const auto bits = static_cast<std::uint32_t>(rng.next_bits());
    const float x = std::bit_cast<float>(bits);
    CHECK(std::bit_cast<std::uint32_t>(hdc::quantize(x, f)) == bits);
  }
}

TEST_CASE("e4m3fn grid matches the 256-pattern enumeration") {
  const auto f = hdc::formats::fp8_e4m3fn();
  std::vector<double> decoded;
  for (unsigned code = 0; code < 256; ++code) {
    const unsigned e = (code >> 3) & 0xF, m = code & 0x7;
    if (e == 15 && m == 7) continue;  // NaN
    const double mag = e == 0 ? std::ldexp(m / 8.0, -6) : std::ldexp(1.0 + m / 8.0, static_cast<int>(e) - 7);
    decoded.push_back((code & 0x80) ? -mag : mag);
  }
  CHECK(decoded.size() == 254);
  CHECK(*std::max_element(decoded.begin(), decoded.end()) == 448.0);
  for (double v : decoded) CHECK(hdc::quantize(static_cast<float>(v), f) == static_cast<float>(v));
  CHECK(positive_grid(f).size() == 127);
}

TEST_CASE("quantize is round-to-nearest-even onto the decoded grid") {
  hdc::RngStream rng(2);
  for (const auto& f : hdc::preset_formats()) {
    if (f.is_identity_on_float()) continue;
    const auto grid = positive_grid(f);
    for (int i = 0; i < 20000; ++i) {
      const float x = random_float(rng, f.exponent_bits >= 8 ? 100.0 : 40.0);
      CHECK_MESSAGE(static_cast<double>(hdc::quantize(x, f)) == nearest(grid, f, x), f.name << " x=" << x);
    }
    // Midpoints between neighbours exercise the tie rule directly.
    for (std::size_t k = 0; k + 1 < std::min<std::size_t>(grid.size(), 300); ++k) {
      const double mid = (grid[k] + grid[k + 1]) / 2.0;
      const auto x = static_cast<float>(mid);
      if (static_cast<double>(x) != mid) continue;
      CHECK(static_cast<double>(hdc::quantize(x, f)) == nearest(grid, f, x));
    }
  }
}

TEST_CASE("idempotence and monotonicity over a million values") {
  hdc::RngStream rng(3);
  std::vector<float> xs(1000000);
  for (auto& x : xs) x = random_float(rng, 60.0);
  std::sort(xs.begin(), xs.end());
  for (const auto& f : hdc::preset_formats()) {
    bool idempotent = true, monotone = true;
    float prev = -std::numeric_limits<float>::infinity();
    for (float x : xs) {
      const float q = hdc::quantize(x, f);
      idempotent = idempotent && hdc::quantize(q, f) == q;
      monotone = monotone && q >= prev;
      prev = q;
    }
    // The fp32 grid has billions of points; the sorted sample covers it.
    const auto grid = f.is_identity_on_float() ? std::vector<double>{} : positive_grid(f);
    for (double g : grid) {
      const auto v = static_cast<float>(g);
      idempotent = idempotent && hdc::quantize(v, f) == v && hdc::quantize(-v, f) == -v;
    }
    CHECK_MESSAGE(idempotent, f.name);
    CHECK_MESSAGE(monotone, f.name);
  }
}

TEST_CASE("format validation") {
  hdc::PrecisionFormat bad{"wide", 9, 23, 127};
  CHECK_THROWS_AS(bad.validate(), hdc::ConfigError);
  hdc::PrecisionFormat custom{"e3m2", 3, 2, 3};
  CHECK_NOTHROW(custom.validate());
  std::vector<float> v{0.3f, -7.0f};
  hdc::quantize_values(v, custom);
  CHECK(v[0] == 0.3125f);
  CHECK(v[1] == -7.0f);
}
