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
#include <span>
#include <utility>
#include <vector>

#include "qsynth/ansatz.hpp"
#include "qsynth/backend.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/random.hpp"

namespace qsynth {

struct OptimizerConfig {
    double learning_rate = 0.01;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    std::size_t max_iters = 10000;
    /// Stop as soon as f <= target_cost.
    double target_cost = 1e-4;
    /// Escape when the best cost improved by less than plateau_rel_delta
    /// (relative) over plateau_window iterations.
    std::size_t plateau_window = 200;
    double plateau_rel_delta = 1e-4;
    double shift_fraction = 0.3;
    double shift_magnitude = 0.5;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::size_t t = 0;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected ADAM update in place.
void adam_step(std::vector<double> &params, std::span<const double> grad, AdamState &state,
               const OptimizerConfig &config);

struct OptimizeTrace {
    std::size_t iterations = 0;                           ///< ADAM steps taken
    std::vector<std::pair<std::size_t, double>> cost_history; ///< (iteration, f)
    std::size_t escapes = 0;
    std::vector<std::size_t> escape_iterations;
    std::size_t expansions = 0;
    double final_cost = 0.0;
    double wall_seconds = 0.0;

    /// Appends another run, offsetting its iteration numbers.
    void merge(const OptimizeTrace &later);
};

struct OptimizeResult {
    std::vector<double> params; ///< best parameters seen
    CostReport report;          ///< at `params`
    OptimizeTrace trace;
};

/// Adds uniform noise in [-shift_magnitude, shift_magnitude] to floor(shift_fraction * P)
/// distinct parameters drawn uniformly without replacement. Frozen entries are never picked
/// (P then counts the free ones).
std::vector<double> plateau_escape(std::span<const double> params, const OptimizerConfig &config, Rng &rng,
                                   const std::vector<bool> &frozen = {});

/// ADAM until f <= target_cost or max_iters, with plateau escapes. Entries marked in
/// `frozen` keep their initial value.
OptimizeResult optimize(CostBackend &backend, const Circuit &circuit, std::vector<double> init_params,
                        const OptimizerConfig &config, const std::vector<bool> &frozen = {});

OptimizeResult optimize(const Unitary &u, const Circuit &circuit, std::vector<double> init_params,
                        const OptimizerConfig &config, BackendKind backend = BackendKind::Reference);

/// Appends `extra_layers` ansatz layers initialised to identity (all new parameters 0).
/// The pair schedule continues from the number of CRY gates already present.
BoundCircuit expand_layers(const BoundCircuit &bound, std::size_t extra_layers,
                           std::span<const QubitPair> pair_schedule);

} // namespace qsynth
