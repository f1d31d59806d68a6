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
#include "qsynth/fixed_point.hpp"

#include <cmath>
#include <limits>

#include "qsynth/errors.hpp"

namespace qsynth::dfe {

namespace {

constexpr std::int64_t kRawMin = std::numeric_limits<std::int32_t>::min();
constexpr std::int64_t kRawMax = std::numeric_limits<std::int32_t>::max();

Fixed32 saturate(std::int64_t v, Saturation &sat) {
    if (v > kRawMax) {
        sat.hit = true;
        return {static_cast<std::int32_t>(kRawMax)};
    }
    if (v < kRawMin) {
        sat.hit = true;
        return {static_cast<std::int32_t>(kRawMin)};
    }
    return {static_cast<std::int32_t>(v)};
}

} // namespace

Fixed32 fx_encode(double x, Saturation &sat) {
    if (std::isnan(x)) {
        throw InvalidParameter("cannot encode NaN as fixed point");
    }
    // Scaling by a power of two is exact; nearbyint uses the default ties-to-even mode.
    const double scaled = std::nearbyint(x * kFixedScale);
    if (scaled > static_cast<double>(kRawMax)) {
        sat.hit = true;
        return {static_cast<std::int32_t>(kRawMax)};
    }
    if (scaled < static_cast<double>(kRawMin)) {
        sat.hit = true;
        return {static_cast<std::int32_t>(kRawMin)};
    }
    return {static_cast<std::int32_t>(scaled)};
}

Fixed32 fx_encode(double x) {
    Saturation ignored;
    return fx_encode(x, ignored);
}

FixedComplex fx_encode(Complex z, Saturation &sat) { return {fx_encode(z.real(), sat), fx_encode(z.imag(), sat)}; }

Fixed32 round_wide_product(WideInt wide, Saturation &sat) {
    constexpr WideInt kHalf = WideInt{1} << (kFracBits - 1);
    constexpr WideInt kMask = (WideInt{1} << kFracBits) - 1;
    WideInt q = wide >> kFracBits; // arithmetic shift: floor
    const WideInt r = wide & kMask;
    if (r > kHalf || (r == kHalf && (q & 1) != 0)) {
        ++q;
    }
    if (q > kRawMax || q < kRawMin) {
        sat.hit = true;
        return {static_cast<std::int32_t>(q > 0 ? kRawMax : kRawMin)};
    }
    return {static_cast<std::int32_t>(q)};
}

FixedComplex cmul_knuth(FixedComplex a, FixedComplex b, Saturation &sat) {
    const std::int64_t ar = a.re.raw, ai = a.im.raw, br = b.re.raw, bi = b.im.raw;
    const WideInt k1 = static_cast<WideInt>(br) * (ar + ai);
    const WideInt k2 = static_cast<WideInt>(ar) * (bi - br);
    const WideInt k3 = static_cast<WideInt>(ai) * (br + bi);
    return {round_wide_product(k1 - k3, sat), round_wide_product(k1 + k2, sat)};
}

FixedComplex cadd(FixedComplex a, FixedComplex b, Saturation &sat) {
    return {saturate(std::int64_t{a.re.raw} + b.re.raw, sat), saturate(std::int64_t{a.im.raw} + b.im.raw, sat)};
}

} // namespace qsynth::dfe
