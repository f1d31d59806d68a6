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
#include <numbers>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/random.hpp"

namespace fixtures {

inline constexpr double kPi = std::numbers::pi;

/// Random circuit drawing uniformly from every gate kind; angles in [-pi, pi].
inline qsynth::BoundCircuit random_circuit(int n, std::size_t n_gates, qsynth::Rng &rng,
                                           bool single_only = false) {
    using qsynth::GateKind;
    static constexpr GateKind kinds[] = {GateKind::U3, GateKind::RY, GateKind::Phase, GateKind::H,
                                         GateKind::CRY, GateKind::CX, GateKind::CZ};
    const std::size_t n_kinds = (n < 2 || single_only) ? 4 : 7;
    qsynth::BoundCircuit out{qsynth::Circuit(n), {}};
    for (std::size_t i = 0; i < n_gates; ++i) {
        const GateKind k = kinds[rng.index(n_kinds)];
        const int t = static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        if (qsynth::is_controlled(k)) {
            int c = static_cast<int>(rng.index(static_cast<std::uint64_t>(n - 1)));
            if (c >= t) {
                ++c;
            }
            out.circuit.add(k, t, c);
        } else {
            out.circuit.add(k, t);
        }
    }
    out.params.resize(out.circuit.param_count());
    for (auto &p : out.params) {
        p = rng.uniform(-kPi, kPi);
    }
    return out;
}

/// Random circuit with exactly `n_params` parameters (parameterized gates plus
/// interleaved fixed entanglers).
inline qsynth::BoundCircuit random_parameterized(int n, std::size_t n_params, qsynth::Rng &rng) {
    using qsynth::GateKind;
    qsynth::BoundCircuit out{qsynth::Circuit(n), {}};
    while (out.circuit.param_count() < n_params) {
        const std::size_t left = n_params - out.circuit.param_count();
        const int t = static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
        int c = n > 1 ? static_cast<int>(rng.index(static_cast<std::uint64_t>(n - 1))) : 0;
        if (c >= t) {
            ++c;
        }
        const auto pick = rng.index(left >= 3 ? 5 : 3);
        if (pick == 0 || n < 2) {
            out.circuit.add(rng.index(2) == 0 ? GateKind::RY : GateKind::Phase, t);
        } else if (pick == 1) {
            out.circuit.add(GateKind::CRY, t, c);
        } else if (pick == 2) {
            out.circuit.add(rng.index(2) == 0 ? GateKind::CX : GateKind::CZ, t, c);
        } else {
            out.circuit.add(GateKind::U3, t);
        }
    }
    out.params.resize(out.circuit.param_count());
    for (auto &p : out.params) {
        p = rng.uniform(-kPi, kPi);
    }
    out.circuit.set_global_phase(rng.uniform(-kPi, kPi));
    return out;
}

} // namespace fixtures
