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
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/fixed_point.hpp"
#include "qsynth/gates.hpp"
#include "qsynth/simulator.hpp"

namespace qsynth::dfe {

struct DfeConfig {
    /// Gate blocks per chain pass (gates per super logic region).
    std::size_t chain_length = 108;
    /// Independent lanes the logical streams are distributed over.
    std::size_t lanes = 4;
    double clock_hz = 3.5e8;
    /// Fixed per-evaluation overhead t_0 (PCIe transfer, host preparation).
    double overhead_seconds = 1e-3;
    /// Keep the final contents of every stream in the result (tests, debugging).
    bool retain_streams = false;

    void validate() const;
};

struct CycleReport {
    std::size_t passes = 0;            ///< ceil(N_G / chain_length)
    std::size_t streams = 0;           ///< 1 + gradient components evaluated
    std::size_t elements_streamed = 0; ///< 4^n * streams * passes
    std::size_t cycles = 0;            ///< busiest lane: ceil(streams / lanes) * 4^n * passes
    double predicted_seconds = 0.0;    ///< predict_time(...) for this shape
    bool approximate = false;          ///< n < 5: the hardware stalls, timing is indicative only
};

/// 2x2 kernel quantized once from its double-precision value.
struct FixedKernel {
    FixedComplex m00, m01, m10, m11;

    static FixedKernel quantize(const GateKernel &k, Saturation &sat);
};

/// Signed distance from basis index `index` to its partner across qubit `target`:
/// +2^t when bit t is 0, -2^t when it is 1.
std::int64_t partner_offset(std::size_t index, int target, int n_qubits);

/// One gate block over a column-major stream of whole columns (length a multiple
/// of 2^n). Output element I combines stream[I] with stream[I + offset] using the
/// kernel row picked by bit t of I; control-0 elements pass through, or are zeroed
/// for a derivative kernel.
void stream_gate(std::span<const FixedComplex> in, std::span<FixedComplex> out, int n_qubits, const Gate &gate,
                 const FixedKernel &kernel, Saturation &sat, bool derivative = false);

std::vector<FixedComplex> stream_gate(std::span<const FixedComplex> column, int n_qubits, const Gate &gate,
                                      const FixedKernel &kernel, Saturation &sat, bool derivative = false);

struct WideTrace {
    std::int64_t re = 0; ///< sum of raw Fixed32 diagonal entries
    std::int64_t im = 0;

    [[nodiscard]] Complex value() const {
        return {static_cast<double>(re) * kFixedLsb, static_cast<double>(im) * kFixedLsb};
    }
    friend bool operator==(const WideTrace &, const WideTrace &) = default;
};

struct ChainResult {
    CostReport report;
    std::vector<double> gradient;
    CycleReport cycles;
    bool saturated = false;
    /// Raw trace accumulator of every stream; index 0 is the cost stream.
    std::vector<WideTrace> traces;
    /// Final stream buffers when DfeConfig::retain_streams is set.
    std::vector<std::vector<FixedComplex>> streams;
};

/// Quantizes U^dagger, streams it (plus one stream per gradient component, each
/// with one gate replaced by its derivative) through passes of the gate chain,
/// buffering between passes, and reduces the traces on the last gate.
ChainResult run_chain(const Unitary &u, const Circuit &circuit, std::span<const double> params,
                      const DfeConfig &config, bool want_gradient);

/// T = 4^n (N_p + 1) / (lanes f) * ceil(N_G / N_chain) + t_0
double predict_time(int n_qubits, std::size_t n_params, std::size_t n_gates, const DfeConfig &config);

CycleReport cycle_report(int n_qubits, std::size_t n_params, std::size_t n_gates, const DfeConfig &config);

} // namespace qsynth::dfe
