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

#ifndef HDC_PRECISION_HPP
#define HDC_PRECISION_HPP

// Emulated low-precision floating point. A format is a sign bit plus
// `exponent_bits` and `mantissa_bits`; values are rounded to nearest-even on
// its grid (subnormals included) and returned as float.
//
// Overflow handling:
//   finite_only == false   IEEE-like: top exponent is Inf/NaN, overflow -> Inf.
//   finite_only == true    saturate to the largest finite value. When
//                          reserves_nan is set (e4m3fn) the all-ones code
//                          is NaN; otherwise every code is finite (e2m1).

#include <span>
#include <string>
#include <vector>

namespace hdc {

struct PrecisionFormat {
  std::string name;
  int exponent_bits = 8;
  int mantissa_bits = 23;
  int bias = 127;
  bool finite_only = false;
  bool reserves_nan = false;

  void validate() const;
  double max_finite() const;
  /// Smallest positive subnormal.
  double min_positive() const;
  bool is_identity_on_float() const;
};

namespace formats {
PrecisionFormat fp32();
PrecisionFormat fp16();
PrecisionFormat bf16();
PrecisionFormat fp8_e4m3fn();
PrecisionFormat fp8_e5m2();
PrecisionFormat fp4_e2m1();
}  // namespace formats

std::vector<PrecisionFormat> preset_formats();
/// Looks up a preset by name ("fp32", "fp16", "bf16", "fp8_e4m3fn", "fp8_e5m2", "fp4_e2m1").
PrecisionFormat format_from_name(const std::string& name);

float quantize(float value, const PrecisionFormat& fmt);
void quantize_values(std::span<float> values, const PrecisionFormat& fmt);

}  // namespace hdc

#endif  // HDC_PRECISION_HPP
