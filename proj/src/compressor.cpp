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
#include "qsynth/compressor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qsynth/errors.hpp"
#include "qsynth/random.hpp"

namespace qsynth {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix_seed(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

OptimizerConfig optimizer_for(const CompressionConfig &config, std::uint64_t seed, bool round) {
    OptimizerConfig oc = config.optimizer;
    oc.target_cost = config.tolerance;
    oc.rng_seed = seed;
    if (round && config.round_max_iters > 0) {
        oc.max_iters = config.round_max_iters;
    }
    return oc;
}

/// CRY angles already sitting on a multiple of pi (snapped or pinned).
std::vector<bool> on_multiple_of_pi(const BoundCircuit &bound) {
    std::vector<bool> mask(bound.params.size(), false);
    for (const auto &g : bound.circuit.gates()) {
        if (g.kind == GateKind::CRY) {
            const double theta = bound.params[g.param_slots[0]];
            mask[g.param_slots[0]] = theta == kPi * std::round(theta / kPi);
        }
    }
    return mask;
}

/// Tries to move each remaining generic CRY onto the nearest odd multiple of pi,
/// where it finalizes with one CX instead of two.
template <class SeedFn>
void pin_special(CostBackend &backend, BoundCircuit &current, const CompressionConfig &config, SeedFn &next_seed,
                 CompressionResult &result) {
    struct Candidate {
        std::size_t slot;
        double distance;
        double pinned;
    };
    std::vector<Candidate> order;
    for (const auto &g : current.circuit.gates()) {
        if (g.kind != GateKind::CRY) {
            continue;
        }
        const std::size_t slot = g.param_slots[0];
        const double theta = current.params[slot];
        if (classify_cry(theta, config.snap_epsilon).kind != CryClass::Generic) {
            continue;
        }
        const double odd = 2.0 * std::floor(theta / (2.0 * kPi)) + 1.0;
        order.push_back({slot, std::abs(theta - kPi * odd), kPi * odd});
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const Candidate &a, const Candidate &b) { return a.distance < b.distance; });
    for (const auto &c : order) {
        BoundCircuit trial = current;
        trial.params[c.slot] = c.pinned;
        auto frozen = on_multiple_of_pi(trial);
        auto r = optimize(backend, trial.circuit, trial.params, optimizer_for(config, next_seed(), true), frozen);
        result.trace.merge(r.trace);
        if (r.report.f <= config.tolerance) {
            current.params = std::move(r.params);
            result.report = r.report;
            ++result.pinned;
        }
    }
}

} // namespace

void CompressionConfig::validate() const {
    if (!(snap_epsilon > 0.0) || snap_epsilon >= kPi / 4.0) {
        throw InvalidParameter("snap_epsilon must lie in (0, pi/4)");
    }
    if (!(tolerance >= 0.0)) {
        throw InvalidParameter("tolerance must be non-negative");
    }
    if (candidates_per_round < 1) {
        throw InvalidParameter("candidates_per_round must be >= 1");
    }
    if (!(initial_spread >= 0.0)) {
        throw InvalidParameter("initial_spread must be non-negative");
    }
    optimizer.validate();
}

BoundCircuit build_ansatz(const AnsatzSpec &spec) {
    spec.validate();
    const auto schedule = spec.schedule();
    BoundCircuit out{Circuit(spec.n_qubits), {}};
    for (std::size_t l = 0; l < spec.layers; ++l) {
        append_layer(out.circuit, schedule[l % schedule.size()]);
    }
    for (int q = 0; q < spec.n_qubits; ++q) {
        out.circuit.u3(q);
    }
    out.params.assign(out.circuit.param_count(), 0.0);
    return out;
}

RoundOutcome compress_round(CostBackend &backend, const BoundCircuit &bound, const CompressionConfig &config,
                            std::uint64_t seed) {
    struct Candidate {
        std::size_t gate;
        double distance;
    };
    std::vector<Candidate> candidates;
    const auto gates = bound.circuit.gates();
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        if (gates[gi].kind == GateKind::CRY) {
            const double theta = bound.params[gates[gi].param_slots[0]];
            // CRY(2pi) is Z on the control, so closeness to identity is measured mod 4pi.
            candidates.push_back({gi, std::abs(std::remainder(theta, 4.0 * kPi))});
        }
    }
    if (candidates.empty()) {
        throw InvalidParameter("compress_round: circuit contains no CRY gate");
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate &a, const Candidate &b) { return a.distance < b.distance; });

    RoundOutcome outcome;
    const std::size_t tries = std::min(config.candidates_per_round, candidates.size());
    for (std::size_t k = 0; k < tries; ++k) {
        BoundCircuit trial = bound;
        trial.circuit.erase_gate(candidates[k].gate, trial.params);
        auto r = optimize(backend, trial.circuit, trial.params, optimizer_for(config, mix_seed(seed + k), true));
        outcome.trace.merge(r.trace);
        outcome.candidates_tried = k + 1;
        if (r.report.f <= config.tolerance) {
            trial.params = std::move(r.params);
            outcome.status = RoundStatus::Removed;
            outcome.result = std::move(trial);
            outcome.report = r.report;
            outcome.removed_gate = candidates[k].gate;
            return outcome;
        }
    }
    return outcome;
}

CompressionResult adaptive_compress(CostBackend &backend, const AnsatzSpec &spec, const CompressionConfig &config) {
    config.validate();
    if (spec.n_qubits != backend.target().n_qubits()) {
        throw DimensionMismatch("ansatz and target unitary qubit counts differ");
    }
    const std::uint64_t base = config.optimizer.rng_seed;
    std::uint64_t calls = 0;
    auto next_seed = [&] { return mix_seed(base ^ mix_seed(++calls)); };

    CompressionResult result;
    BoundCircuit current = build_ansatz(spec);
    if (config.initial_spread > 0.0) {
        Rng rng(mix_seed(base));
        for (auto &p : current.params) {
            p = rng.uniform(-config.initial_spread, config.initial_spread);
        }
    }

    auto r = optimize(backend, current.circuit, current.params, optimizer_for(config, next_seed(), false));
    result.trace.merge(r.trace);
    current.params = r.params;
    for (std::size_t e = 0; r.report.f > config.tolerance && e < config.max_expansions; ++e) {
        current = expand_layers(current, config.expansion_layers, spec.schedule());
        r = optimize(backend, current.circuit, current.params, optimizer_for(config, next_seed(), false));
        r.trace.expansions = 1;
        result.trace.merge(r.trace);
        current.params = r.params;
    }
    if (r.report.f > config.tolerance) {
        throw FailedToConverge("initial optimization reached f = " + std::to_string(r.report.f) +
                               ", tolerance " + std::to_string(config.tolerance));
    }
    result.report = r.report;
    result.initial_cry_count = current.circuit.count(GateKind::CRY);

    for (std::size_t round = 0; round < config.max_rounds && current.circuit.count(GateKind::CRY) > 0; ++round) {
        auto outcome = compress_round(backend, current, config, next_seed());
        result.trace.merge(outcome.trace);
        if (outcome.status != RoundStatus::Removed) {
            break;
        }
        current = std::move(outcome.result);
        result.report = outcome.report;
        ++result.rounds_accepted;
        result.cry_count_history.push_back(current.circuit.count(GateKind::CRY));
    }

    // Snap near-special CRY angles onto exact multiples of pi and freeze them.
    BoundCircuit snapped = current;
    std::vector<bool> frozen(snapped.params.size(), false);
    std::size_t n_snapped = 0;
    for (const auto &g : snapped.circuit.gates()) {
        if (g.kind != GateKind::CRY) {
            continue;
        }
        double &theta = snapped.params[g.param_slots[0]];
        if (classify_cry(theta, config.snap_epsilon).kind != CryClass::Generic) {
            theta = kPi * std::round(theta / kPi);
            frozen[g.param_slots[0]] = true;
            ++n_snapped;
        }
    }
    if (n_snapped > 0) {
        auto s = optimize(backend, snapped.circuit, snapped.params, optimizer_for(config, next_seed(), false),
                          frozen);
        result.trace.merge(s.trace);
        if (s.report.f <= config.tolerance) {
            snapped.params = std::move(s.params);
            current = std::move(snapped);
            result.report = s.report;
            result.snapped = n_snapped;
        }
    }
    if (config.pin_special) {
        pin_special(backend, current, config, next_seed, result);
    }
    result.circuit = std::move(current);
    result.trace.final_cost = result.report.f;
    return result;
}

CompressionResult adaptive_compress(const Unitary &u, const AnsatzSpec &spec, const CompressionConfig &config,
                                    BackendKind backend) {
    auto b = make_backend(backend, u);
    return adaptive_compress(*b, spec, config);
}

namespace {

/// Accumulates single-qubit kernels per wire and emits merged U3 gates.
class Finalizer {
  public:
    explicit Finalizer(int n_qubits)
        : out_{Circuit(n_qubits), {}}, pending_(static_cast<std::size_t>(n_qubits)),
          dirty_(static_cast<std::size_t>(n_qubits), false) {}

    void single(int q, const GateKernel &k) {
        const auto w = static_cast<std::size_t>(q);
        pending_[w] = dirty_[w] ? k * pending_[w] : k;
        dirty_[w] = true;
    }

    void cx(int control, int target) {
        flush(control);
        flush(target);
        out_.circuit.cx(control, target);
    }

    void cz(int control, int target) {
        single(target, hadamard_kernel());
        cx(control, target);
        single(target, hadamard_kernel());
    }

    void add_phase(double delta) { phase_ += delta; }

    void gate(const Gate &g, std::span<const double> params, double snap_epsilon) {
        switch (g.kind) {
        case GateKind::U3:
        case GateKind::RY:
        case GateKind::H:
        case GateKind::Phase:
            single(g.target, gate_kernel(g, params));
            break;
        case GateKind::CX:
            cx(*g.control, g.target);
            break;
        case GateKind::CZ:
            cz(*g.control, g.target);
            break;
        case GateKind::CRY: {
            const double theta = params[g.param_slots[0]];
            if (!std::isfinite(theta)) {
                throw InvalidParameter("finalize: CRY angle is not finite");
            }
            const auto expansion = expand_cry(g, theta, snap_epsilon);
            add_phase(expansion.phase_delta);
            for (const auto &sub : expansion.sequence.circuit.gates()) {
                gate(sub, expansion.sequence.params, snap_epsilon);
            }
            break;
        }
        }
    }

    BoundCircuit finish(double global_phase) {
        for (int q = 0; q < out_.circuit.n_qubits(); ++q) {
            flush(q);
        }
        out_.circuit.set_global_phase(global_phase + phase_);
        return std::move(out_);
    }

  private:
    void flush(int q) {
        const auto w = static_cast<std::size_t>(q);
        if (!dirty_[w]) {
            return;
        }
        dirty_[w] = false;
        const U3Angles a = u3_from_kernel(pending_[w]);
        phase_ += a.phase;
        constexpr double kNegligible = 1e-15;
        if (std::abs(a.theta) < kNegligible && std::abs(std::remainder(a.phi + a.lambda, 2.0 * kPi)) < kNegligible) {
            return; // identity up to the phase already recorded
        }
        out_.circuit.u3(q);
        out_.params.insert(out_.params.end(), {a.theta, a.phi, a.lambda});
    }

    BoundCircuit out_;
    std::vector<GateKernel> pending_;
    std::vector<bool> dirty_;
    double phase_ = 0.0;
};

} // namespace

BoundCircuit finalize(const BoundCircuit &bound, double snap_epsilon) {
    bound.circuit.validate();
    if (bound.params.size() != bound.circuit.param_count()) {
        throw DimensionMismatch("finalize: parameter vector length mismatch");
    }
    Finalizer fin(bound.circuit.n_qubits());
    for (const auto &g : bound.circuit.gates()) {
        fin.gate(g, bound.params, snap_epsilon);
    }
    return fin.finish(bound.circuit.global_phase());
}

} // namespace qsynth
