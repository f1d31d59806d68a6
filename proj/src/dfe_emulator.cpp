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
#include "qsynth/dfe_emulator.hpp"

#include <cmath>
#include <string>

#include "qsynth/errors.hpp"

namespace qsynth::dfe {

void DfeConfig::validate() const {
    if (chain_length < 1) {
        throw InvalidParameter("chain_length must be >= 1");
    }
    if (lanes < 1) {
        throw InvalidParameter("lanes must be >= 1");
    }
    if (!(clock_hz > 0.0) || !std::isfinite(clock_hz)) {
        throw InvalidParameter("clock frequency must be positive");
    }
    if (!(overhead_seconds >= 0.0) || !std::isfinite(overhead_seconds)) {
        throw InvalidParameter("overhead must be non-negative");
    }
}

FixedKernel FixedKernel::quantize(const GateKernel &k, Saturation &sat) {
    return {fx_encode(k.m00, sat), fx_encode(k.m01, sat), fx_encode(k.m10, sat), fx_encode(k.m11, sat)};
}

std::int64_t partner_offset(std::size_t index, int target, int n_qubits) {
    if (n_qubits < 1 || target < 0 || target >= n_qubits || index >= dim_of(n_qubits)) {
        throw InvalidWire("partner_offset: index or target out of range");
    }
    const auto step = std::int64_t{1} << target;
    return (index >> target) & 1U ? -step : step;
}

void stream_gate(std::span<const FixedComplex> in, std::span<FixedComplex> out, int n_qubits, const Gate &gate,
                 const FixedKernel &k, Saturation &sat, bool derivative) {
    const std::size_t d = dim_of(n_qubits);
    if (in.size() != out.size() || in.size() % d != 0) {
        throw DimensionMismatch("stream length must be a multiple of 2^n");
    }
    if (gate.target < 0 || gate.target >= n_qubits ||
        (gate.control && (*gate.control < 0 || *gate.control >= n_qubits))) {
        throw InvalidWire("gate wire out of range for stream");
    }
    const std::size_t tmask = std::size_t{1} << gate.target;
    const std::size_t cmask = gate.control ? std::size_t{1} << *gate.control : 0;
    const std::int64_t step = std::int64_t{1} << gate.target;
    const FixedComplex zero{};
    for (std::size_t e = 0; e < in.size(); ++e) {
        // Index counter: position of this element inside its column.
        const std::size_t index = e & (d - 1);
        if (cmask != 0 && (index & cmask) == 0) {
            out[e] = derivative ? zero : in[e];
            continue;
        }
        const bool upper = (index & tmask) == 0;
        const std::size_t partner = static_cast<std::size_t>(static_cast<std::int64_t>(e) + (upper ? step : -step));
        if (upper) {
            out[e] = cadd(cmul_knuth(k.m00, in[e], sat), cmul_knuth(k.m01, in[partner], sat), sat);
        } else {
            out[e] = cadd(cmul_knuth(k.m10, in[partner], sat), cmul_knuth(k.m11, in[e], sat), sat);
        }
    }
}

std::vector<FixedComplex> stream_gate(std::span<const FixedComplex> column, int n_qubits, const Gate &gate,
                                      const FixedKernel &kernel, Saturation &sat, bool derivative) {
    std::vector<FixedComplex> out(column.size());
    stream_gate(column, out, n_qubits, gate, kernel, sat, derivative);
    return out;
}

double predict_time(int n_qubits, std::size_t n_params, std::size_t n_gates, const DfeConfig &config) {
    config.validate();
    const double elements = std::ldexp(1.0, 2 * n_qubits) * static_cast<double>(n_params + 1);
    const double passes = static_cast<double>((n_gates + config.chain_length - 1) / config.chain_length);
    return elements / (static_cast<double>(config.lanes) * config.clock_hz) * passes + config.overhead_seconds;
}

CycleReport cycle_report(int n_qubits, std::size_t n_params, std::size_t n_gates, const DfeConfig &config) {
    config.validate();
    CycleReport r;
    const std::size_t elements = dim_of(n_qubits) * dim_of(n_qubits);
    r.passes = (n_gates + config.chain_length - 1) / config.chain_length;
    r.streams = n_params + 1;
    r.elements_streamed = elements * r.streams * r.passes;
    r.cycles = (r.streams + config.lanes - 1) / config.lanes * elements * r.passes;
    r.predicted_seconds = predict_time(n_qubits, n_params, n_gates, config);
    r.approximate = n_qubits < 5;
    return r;
}

namespace {

/// Where a logical stream departs from the cost stream.
struct StreamPlan {
    std::size_t deriv_gate = 0; // == gates.size() for the cost stream
    FixedKernel deriv_kernel{};
};

} // namespace

ChainResult run_chain(const Unitary &u, const Circuit &circuit, std::span<const double> params,
                      const DfeConfig &config, bool want_gradient) {
    config.validate();
    if (u.n_qubits() != circuit.n_qubits()) {
        throw DimensionMismatch("unitary and circuit qubit counts differ");
    }
    if (params.size() != circuit.param_count()) {
        throw DimensionMismatch("expected " + std::to_string(circuit.param_count()) + " parameters");
    }
    const int n = circuit.n_qubits();
    const std::size_t d = dim_of(n);
    const auto gates = circuit.gates();
    const std::size_t n_gates = gates.size();
    const std::size_t n_grad = want_gradient ? circuit.param_count() : 0;

    ChainResult result;
    Saturation sat;

    // Host side: kernels in double precision, quantized once.
    std::vector<FixedKernel> kernels;
    kernels.reserve(n_gates);
    for (const auto &g : gates) {
        kernels.push_back(FixedKernel::quantize(gate_kernel(g, params), sat));
    }
    std::vector<StreamPlan> plans(1 + n_grad, StreamPlan{n_gates, {}});
    if (n_grad > 0) {
        const auto owners = circuit.slot_owners();
        for (std::size_t slot = 0; slot < n_grad; ++slot) {
            const auto [gi, role] = owners[slot];
            plans[1 + slot] = {gi, FixedKernel::quantize(gate_deriv_kernel(gates[gi], params, role), sat)};
        }
    }

    // On-board memory: U^dagger, column-major, replicated per logical stream.
    const Matrix udag = u.adjoint();
    std::vector<FixedComplex> initial(d * d);
    for (std::size_t col = 0; col < d; ++col) {
        for (std::size_t row = 0; row < d; ++row) {
            initial[col * d + row] = fx_encode(udag(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)), sat);
        }
    }
    std::vector<std::vector<FixedComplex>> memory(plans.size(), initial);
    std::vector<WideTrace> traces(plans.size());

    auto accumulate_trace = [d](std::span<const FixedComplex> s, WideTrace &acc) {
        for (std::size_t i = 0; i < d; ++i) {
            acc.re += s[i * d + i].re.raw;
            acc.im += s[i * d + i].im.raw;
        }
    };

    const std::size_t passes = (n_gates + config.chain_length - 1) / config.chain_length;
    std::vector<FixedComplex> ping(d * d), pong(d * d);
    // Each pass: every lane runs its streams back to back through the chain segment.
    for (std::size_t pass = 0; pass < passes; ++pass) {
        const std::size_t first = pass * config.chain_length;
        const std::size_t last = std::min(n_gates, first + config.chain_length);
        for (std::size_t lane = 0; lane < config.lanes; ++lane) {
            for (std::size_t s = lane; s < plans.size(); s += config.lanes) {
                ping = memory[s];
                for (std::size_t gi = first; gi < last; ++gi) {
                    const bool deriv = plans[s].deriv_gate == gi;
                    stream_gate(ping, pong, n, gates[gi], deriv ? plans[s].deriv_kernel : kernels[gi], sat, deriv);
                    std::swap(ping, pong);
                }
                if (last == n_gates) {
                    accumulate_trace(ping, traces[s]);
                }
                memory[s] = ping;
            }
        }
    }
    if (passes == 0) {
        for (std::size_t s = 0; s < plans.size(); ++s) {
            accumulate_trace(memory[s], traces[s]);
        }
    }

    const Complex phase{std::cos(circuit.global_phase()), std::sin(circuit.global_phase())};
    result.report = make_cost_report(phase * traces[0].value(), d);
    result.gradient.resize(n_grad);
    for (std::size_t slot = 0; slot < n_grad; ++slot) {
        result.gradient[slot] = -(phase * traces[1 + slot].value()).real();
    }
    result.cycles = cycle_report(n, n_grad, n_gates, config);
    result.saturated = sat.hit;
    result.traces = std::move(traces);
    if (config.retain_streams) {
        result.streams = std::move(memory);
    }
    return result;
}

} // namespace qsynth::dfe
