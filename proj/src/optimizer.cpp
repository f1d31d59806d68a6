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
#include "qsynth/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "qsynth/errors.hpp"

namespace qsynth {

void OptimizerConfig::validate() const {
    const bool ok = learning_rate > 0.0 && beta1 > 0.0 && beta1 < 1.0 && beta2 > 0.0 && beta2 < 1.0 && eps > 0.0 &&
                    target_cost >= 0.0 && plateau_window > 0 && plateau_rel_delta > 0.0 && shift_fraction > 0.0 &&
                    shift_fraction <= 1.0 && shift_magnitude > 0.0;
    if (!ok) {
        throw InvalidParameter("invalid optimizer configuration");
    }
}

void adam_step(std::vector<double> &params, std::span<const double> grad, AdamState &state,
               const OptimizerConfig &config) {
    if (grad.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size()) {
        throw DimensionMismatch("adam_step: length mismatch");
    }
    ++state.t;
    const double bc1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = config.beta1 * state.m[i] + (1.0 - config.beta1) * grad[i];
        state.v[i] = config.beta2 * state.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.eps);
    }
}

void OptimizeTrace::merge(const OptimizeTrace &later) {
    const std::size_t offset = iterations;
    for (const auto &[it, f] : later.cost_history) {
        cost_history.emplace_back(offset + it, f);
    }
    for (auto it : later.escape_iterations) {
        escape_iterations.push_back(offset + it);
    }
    iterations += later.iterations;
    escapes += later.escapes;
    expansions += later.expansions;
    final_cost = later.final_cost;
    wall_seconds += later.wall_seconds;
}

std::vector<double> plateau_escape(std::span<const double> params, const OptimizerConfig &config, Rng &rng,
                                   const std::vector<bool> &frozen) {
    std::vector<double> out(params.begin(), params.end());
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (frozen.empty() || !frozen[i]) {
            candidates.push_back(i);
        }
    }
    const auto picks = static_cast<std::size_t>(std::floor(config.shift_fraction * static_cast<double>(candidates.size())));
    // Partial Fisher-Yates: the first `picks` entries become a uniform sample without replacement.
    for (std::size_t k = 0; k < picks; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.index(candidates.size() - k));
        std::swap(candidates[k], candidates[j]);
        out[candidates[k]] += rng.uniform(-config.shift_magnitude, config.shift_magnitude);
    }
    return out;
}

OptimizeResult optimize(CostBackend &backend, const Circuit &circuit, std::vector<double> init_params,
                        const OptimizerConfig &config, const std::vector<bool> &frozen) {
    config.validate();
    if (init_params.size() != circuit.param_count()) {
        throw DimensionMismatch("optimize: initial parameter vector has wrong length");
    }
    if (!frozen.empty() && frozen.size() != init_params.size()) {
        throw DimensionMismatch("optimize: frozen mask has wrong length");
    }
    const auto start = std::chrono::steady_clock::now();
    Rng rng(config.rng_seed);
    AdamState state(init_params.size());

    OptimizeResult best{init_params, {}, {}};
    double best_f = std::numeric_limits<double>::infinity();
    std::vector<double> params = std::move(init_params);
    OptimizeTrace &trace = best.trace;

    std::size_t window_start = 0;
    double window_best = std::numeric_limits<double>::infinity();

    for (std::size_t it = 0;; ++it) {
        Evaluation eval = backend.evaluate(circuit, params, true);
        const double f = eval.report.f;
        trace.cost_history.emplace_back(it, f);
        if (f < best_f) {
            best_f = f;
            best.params = params;
            best.report = eval.report;
        }
        if (f <= config.target_cost || it >= config.max_iters) {
            trace.iterations = it;
            break;
        }
        if (!frozen.empty()) {
            for (std::size_t i = 0; i < frozen.size(); ++i) {
                if (frozen[i]) {
                    eval.gradient[i] = 0.0;
                }
            }
        }
        if (it - window_start >= config.plateau_window) {
            if (window_best - best_f < config.plateau_rel_delta * window_best) {
                params = plateau_escape(best.params, config, rng, frozen);
                state = AdamState(params.size());
                ++trace.escapes;
                trace.escape_iterations.push_back(it);
                window_start = it;
                window_best = best_f;
                continue;
            }
            window_start = it;
            window_best = best_f;
        } else if (it == 0) {
            window_best = best_f;
        }
        adam_step(params, eval.gradient, state, config);
    }
    if (trace.cost_history.back().second != best_f) {
        trace.cost_history.emplace_back(trace.iterations, best_f);
    }
    trace.final_cost = best_f;
    trace.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return best;
}

OptimizeResult optimize(const Unitary &u, const Circuit &circuit, std::vector<double> init_params,
                        const OptimizerConfig &config, BackendKind backend) {
    auto b = make_backend(backend, u);
    return optimize(*b, circuit, std::move(init_params), config);
}

BoundCircuit expand_layers(const BoundCircuit &bound, std::size_t extra_layers,
                           std::span<const QubitPair> pair_schedule) {
    if (extra_layers < 1) {
        throw InvalidParameter("expand_layers: extra_layers must be >= 1");
    }
    if (pair_schedule.empty()) {
        throw InvalidParameter("expand_layers: empty pair schedule");
    }
    BoundCircuit out = bound;
    const std::size_t offset = out.circuit.count(GateKind::CRY);
    for (std::size_t l = 0; l < extra_layers; ++l) {
        append_layer(out.circuit, pair_schedule[(offset + l) % pair_schedule.size()]);
    }
    out.params.resize(out.circuit.param_count(), 0.0);
    return out;
}

} // namespace qsynth
