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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "qsynth/circuit.hpp"
#include "qsynth/simulator.hpp"

namespace qsynth {

// --- metrics ------------------------------------------------------------------

/// Longest wire-dependency chain; every gate counts one unit.
std::size_t depth(const Circuit &circuit);

struct MetricsReport {
    std::size_t cx_count = 0;
    std::size_t depth = 0;
    double f = 0.0;
    double c_hst = 0.0;
    double f_avg = 0.0;
    double f_frob = 0.0;
    int n_qubits = 0;
    std::size_t gate_total = 0;
};

MetricsReport compute_metrics(const Circuit &circuit, const CostReport &cost);

// --- UMAT binary unitary format -------------------------------------------------
//
//   offset 0  "UMAT"
//          4  version (0x01)
//          5  n_qubits
//          6  4^n entries, column-major, each re then im as little-endian float64

inline constexpr std::uint8_t kUmatVersion = 1;

std::string encode_umat(const Unitary &u);
/// Throws FormatError (BadMagic, BadVersion, BadSize, Truncated, NotUnitary).
Unitary decode_umat(std::string_view bytes);

void write_unitary(const Unitary &u, const std::filesystem::path &path);
Unitary read_unitary(const std::filesystem::path &path);

// --- OpenQASM 2.0 -------------------------------------------------------------

/// Emits a {U3, CX} circuit; angles with 17 significant digits and the global
/// phase as a `// global_phase: <value>` comment. Throws InvalidParameter for other gates.
std::string export_qasm(const BoundCircuit &bound);
void export_qasm(const BoundCircuit &bound, const std::filesystem::path &path);

/// Accepts u3, u, cx, cz, h, x, ry, rz, s, sdg with constant expressions over
/// numbers and `pi`. Throws FormatError (Syntax / UnsupportedGate) with the line number.
BoundCircuit parse_qasm(std::string_view text);
BoundCircuit import_qasm(const std::filesystem::path &path);

// --- test inputs ----------------------------------------------------------------

/// Complex Ginibre matrix -> QR -> Q with R's diagonal phases removed.
Unitary haar_random_unitary(int n_qubits, std::uint64_t seed);

} // namespace qsynth
