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

#include "hdc/precision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdc/error.hpp"

namespace hdc {

void PrecisionFormat::validate() const {
  if (exponent_bits < 1 || exponent_bits > 8) throw ConfigError("precision: exponent_bits must be in [1, 8]");
  if (mantissa_bits < 0 || mantissa_bits > 23) throw ConfigError("precision: mantissa_bits must be in [0, 23]");
  if (1 + exponent_bits + mantissa_bits > 32) throw ConfigError("precision: more than 32 bits");
  if (!finite_only && exponent_bits < 2) throw ConfigError("precision: IEEE-like formats need >= 2 exponent bits");
  if (finite_only && reserves_nan && exponent_bits + mantissa_bits < 2) {
    throw ConfigError("precision: no room for a NaN code");
  }
}

double PrecisionFormat::max_finite() const {
  const int top_field = (1 << exponent_bits) - 1;
  const double ulp = std::ldexp(1.0, -mantissa_bits);
  if (!finite_only) return (2.0 - ulp) * std::ldexp(1.0, top_field - 1 - bias);
  const double top_mantissa = reserves_nan ? 2.0 - 2.0 * ulp : 2.0 - ulp;
  return top_mantissa * std::ldexp(1.0, top_field - bias);
}

double PrecisionFormat::min_positive() const { return std::ldexp(1.0, 1 - bias - mantissa_bits); }

bool PrecisionFormat::is_identity_on_float() const {
  return exponent_bits == 8 && mantissa_bits == 23 && bias == 127 && !finite_only;
}

namespace formats {
PrecisionFormat fp32() { return {"fp32", 8, 23, 127, false, false}; }
PrecisionFormat fp16() { return {"fp16", 5, 10, 15, false, false}; }
PrecisionFormat bf16() { return {"bf16", 8, 7, 127, false, false}; }
PrecisionFormat fp8_e4m3fn() { return {"fp8_e4m3fn", 4, 3, 7, true, true}; }
PrecisionFormat fp8_e5m2() { return {"fp8_e5m2", 5, 2, 15, false, false}; }
PrecisionFormat fp4_e2m1() { return {"fp4_e2m1", 2, 1, 1, true, false}; }
}  // namespace formats

std::vector<PrecisionFormat> preset_formats() {
  return {formats::fp32(), formats::fp16(), formats::bf16(), formats::fp8_e4m3fn(), formats::fp8_e5m2(),
          formats::fp4_e2m1()};
}

PrecisionFormat format_from_name(const std::string& name) {
  for (auto& f : preset_formats()) {
    if (f.name == name) return f;
  }
  throw ConfigError("unknown precision format '" + name + "'");
}

float quantize(float value, const PrecisionFormat& fmt) {
  if (fmt.is_identity_on_float()) return value;
  if (std::isnan(value)) return value;
  const double max = fmt.max_finite();
  if (std::isinf(value)) {
    return fmt.finite_only ? static_cast<float>(std::copysign(max, value)) : value;
  }
  const double a = std::fabs(static_cast<double>(value));
  if (a == 0.0) return value;
  const int emin = 1 - fmt.bias;
  const int e = std::max(std::ilogb(a), emin);
  const int quantum = e - fmt.mantissa_bits;
  // Scaling by a power of two is exact, so nearbyint sees the true quotient
  // and applies the default round-half-to-even mode.
  double r = std::ldexp(std::nearbyint(std::ldexp(a, -quantum)), quantum);
  if (r > max) r = fmt.finite_only ? max : std::numeric_limits<double>::infinity();
  return static_cast<float>(std::copysign(r, static_cast<double>(value)));
}

void quantize_values(std::span<float> values, const PrecisionFormat& fmt) {
  fmt.validate();
  if (fmt.is_identity_on_float()) return;
  for (float& v : values) v = quantize(v, fmt);
}

}  // namespace hdc
