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
#include <optional>
#include <vector>

#include "qsynth/ansatz.hpp"
#include "qsynth/backend.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/gates.hpp"
#include "qsynth/optimizer.hpp"

namespace qsynth {

/// CRY angles within this distance of a multiple of pi are rewritten as special
/// gates by finalize; small enough that the rewrite is exact to double precision.
inline constexpr double kExactSnapEpsilon = 1e-12;

struct CompressionConfig {
    /// Radius used to snap CRY angles to 0 / +-pi before the last re-optimization.
    double snap_epsilon = kDefaultSnapEpsilon;
    /// Acceptance threshold on f; also used as the optimizer target.
    double tolerance = 1e-4;
    std::size_t max_rounds = 64;
    /// CRYs tried per round (nearest-to-identity first) before the round fails.
    std::size_t candidates_per_round = 2;
    /// Iteration budget for each re-optimization after a removal (0: optimizer.max_iters).
    std::size_t round_max_iters = 0;
    /// Layers added (identity-initialised) when the first optimization misses tolerance.
    std::size_t max_expansions = 2;
    std::size_t expansion_layers = 1;
    /// Half-width of the uniform initial parameter distribution (0 starts from identity).
    double initial_spread = 0.0;
    /// After snapping, try forcing each generic CRY to an odd multiple of pi.
    bool pin_special = true;
    OptimizerConfig optimizer;

    void validate() const;
};

/// Layered ansatz: per layer U3(a), U3(b), CRY(a -> b) on the scheduled pair,
/// then a trailing U3 on every qubit. Parameters start at zero (identity circuit).
BoundCircuit build_ansatz(const AnsatzSpec &spec);

enum class RoundStatus { Removed, Failed };

struct RoundOutcome {
    RoundStatus status = RoundStatus::Failed;
    BoundCircuit result;             ///< valid when Removed
    CostReport report;               ///< valid when Removed
    std::optional<std::size_t> removed_gate;
    std::size_t candidates_tried = 0;
    OptimizeTrace trace;
};

/// Removes the CRY closest to identity, re-optimizes, and keeps the result if
/// f <= tolerance; otherwise tries the next-closest (up to candidates_per_round).
/// Throws InvalidParameter if the circuit has no CRY.
RoundOutcome compress_round(CostBackend &backend, const BoundCircuit &bound, const CompressionConfig &config,
                            std::uint64_t seed);

struct CompressionResult {
    BoundCircuit circuit; ///< U3 + CRY form; snapped CRYs sit exactly at multiples of pi
    CostReport report;
    OptimizeTrace trace;
    std::size_t initial_cry_count = 0;
    /// CRY count after each accepted round.
    std::vector<std::size_t> cry_count_history;
    std::size_t rounds_accepted = 0;
    std::size_t snapped = 0;
    std::size_t pinned = 0;
};

/// build_ansatz -> optimize (expanding layers if needed) -> removal rounds until
/// one fails or max_rounds -> snap remaining CRYs and re-optimize once.
/// Throws FailedToConverge if the initial optimization never reaches tolerance.
CompressionResult adaptive_compress(CostBackend &backend, const AnsatzSpec &spec, const CompressionConfig &config);

CompressionResult adaptive_compress(const Unitary &u, const AnsatzSpec &spec, const CompressionConfig &config,
                                    BackendKind backend = BackendKind::Reference);

/// Rewrites into {U3, CX}: CRYs through expand_cry (CZ -> H CX H), then every
/// maximal single-qubit run merged into one U3, residual phases moved to the
/// global phase. The circuit unitary is preserved.
BoundCircuit finalize(const BoundCircuit &bound, double snap_epsilon = kExactSnapEpsilon);

} // namespace qsynth
