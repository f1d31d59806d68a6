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
#include <optional>

#include "qsynth/backend.hpp"
#include "qsynth/compressor.hpp"
#include "qsynth/dfe_emulator.hpp"
#include "qsynth/toolkit.hpp"

namespace qsynth {

/// Layer count used when DecomposeOptions::layers is 0.
std::size_t default_layers(int n_qubits);

struct DecomposeOptions {
    std::size_t layers = 0; ///< 0: default_layers(n)
    double tolerance = 1e-4;
    BackendKind backend = BackendKind::Reference;
    std::uint64_t seed = 0;
    std::size_t max_rounds = 64;
    std::optional<std::size_t> max_iters;
    dfe::DfeConfig dfe;
    /// Starting point; tolerance, seed and max_rounds above override its fields.
    CompressionConfig compression;
};

struct DecomposeResult {
    BoundCircuit circuit; ///< finalized {U3, CX} circuit
    CompressionResult compression;
    /// Reference-backend cost of the finalized circuit.
    CostReport report;
    MetricsReport metrics;
    std::optional<dfe::CycleReport> cycles; ///< dfe backend: cycle model of the final compressed shape
};

/// adaptive_compress followed by finalize. Throws FailedToConverge when the
/// ansatz never reaches tolerance.
DecomposeResult decompose(const Unitary &u, const DecomposeOptions &options);

} // namespace qsynth
