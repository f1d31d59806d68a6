// Copyright 2026 The qsynth Authors
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
#pragma once

#include <cstdint>

#include "qsynth/types.hpp"

namespace qsynth::dfe {

__extension__ typedef __int128 WideInt;

/// Fractional bits of the stream format: sign + 1 integer bit + 30 fractional bits.
inline constexpr int kFracBits = 30;
inline constexpr double kFixedScale = static_cast<double>(std::int64_t{1} << kFracBits);
inline constexpr double kFixedLsb = 1.0 / kFixedScale;

/// Signed 32-bit fixed-point number, value = raw / 2^30, range [-2, 2 - 2^-30].
struct Fixed32 {
    std::int32_t raw = 0;

    [[nodiscard]] double value() const noexcept { return static_cast<double>(raw) * kFixedLsb; }
    friend bool operator==(Fixed32, Fixed32) = default;
};

struct FixedComplex {
    Fixed32 re;
    Fixed32 im;

    friend bool operator==(const FixedComplex &, const FixedComplex &) = default;
};

/// Sticky overflow indicator; results that leave the representable range saturate.
struct Saturation {
    bool hit = false;
};

/// Round-to-nearest-even onto the 2^-30 grid, saturating outside the range.
/// Throws InvalidParameter for NaN.
Fixed32 fx_encode(double x, Saturation &sat);
Fixed32 fx_encode(double x);
inline double fx_decode(Fixed32 x) noexcept { return x.value(); }

FixedComplex fx_encode(Complex z, Saturation &sat);
inline Complex fx_decode(FixedComplex z) noexcept { return {z.re.value(), z.im.value()}; }

/// Rounds a wide value carrying 2*kFracBits fractional bits to Fixed32 (ties to even).
Fixed32 round_wide_product(WideInt wide, Saturation &sat);

/// (a.re b.re - a.im b.im, a.re b.im + a.im b.re) with three multiplies and five
/// additions; sub-results stay wide and each component is rounded once at the end.
FixedComplex cmul_knuth(FixedComplex a, FixedComplex b, Saturation &sat);

/// Saturating componentwise addition.
FixedComplex cadd(FixedComplex a, FixedComplex b, Saturation &sat);

} // namespace qsynth::dfe
