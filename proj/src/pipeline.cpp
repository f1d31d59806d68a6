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
#include "qsynth/pipeline.hpp"

#include "qsynth/errors.hpp"
#include "qsynth/simulator.hpp"

namespace qsynth {

std::size_t default_layers(int n_qubits) {
    switch (n_qubits) {
    case 1:
        throw InvalidParameter("decomposition needs at least 2 qubits");
    case 2:
        return 3;
    case 3:
        return 16;
    default:
        // roughly (4^n - 3n - 1) / 4 entangling layers
        return (dim_of(n_qubits) * dim_of(n_qubits) - 3 * static_cast<std::size_t>(n_qubits) - 1) / 4;
    }
}

DecomposeResult decompose(const Unitary &u, const DecomposeOptions &options) {
    AnsatzSpec spec;
    spec.n_qubits = u.n_qubits();
    spec.layers = options.layers == 0 ? default_layers(u.n_qubits()) : options.layers;

    CompressionConfig cc = options.compression;
    cc.tolerance = options.tolerance;
    cc.max_rounds = options.max_rounds;
    cc.optimizer.rng_seed = options.seed;
    if (options.max_iters) {
        cc.optimizer.max_iters = *options.max_iters;
    }

    auto backend = make_backend(options.backend, u, options.dfe);
    DecomposeResult out;
    out.compression = adaptive_compress(*backend, spec, cc);
    out.circuit = finalize(out.compression.circuit);
    out.report = cost(u, out.circuit.circuit, out.circuit.params);
    out.metrics = compute_metrics(out.circuit.circuit, out.report);
    if (options.backend == BackendKind::Dfe) {
        const auto &c = out.compression.circuit.circuit;
        out.cycles = dfe::cycle_report(c.n_qubits(), c.param_count(), c.size(), options.dfe);
    }
    return out;
}

} // namespace qsynth
