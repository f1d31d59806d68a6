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
#include "qsynth/toolkit.hpp"

#include <algorithm>
#include <vector>

namespace qsynth {

std::size_t depth(const Circuit &circuit) {
    std::vector<std::size_t> wire(static_cast<std::size_t>(circuit.n_qubits()), 0);
    for (const auto &g : circuit.gates()) {
        const auto t = static_cast<std::size_t>(g.target);
        std::size_t level = wire[t];
        if (g.control) {
            level = std::max(level, wire[static_cast<std::size_t>(*g.control)]);
        }
        ++level;
        wire[t] = level;
        if (g.control) {
            wire[static_cast<std::size_t>(*g.control)] = level;
        }
    }
    return wire.empty() ? 0 : *std::max_element(wire.begin(), wire.end());
}

MetricsReport compute_metrics(const Circuit &circuit, const CostReport &cost) {
    MetricsReport m;
    m.cx_count = circuit.count(GateKind::CX);
    m.depth = depth(circuit);
    m.f = cost.f;
    m.c_hst = cost.c_hst;
    m.f_avg = cost.f_avg;
    m.f_frob = cost.f_frob;
    m.n_qubits = circuit.n_qubits();
    m.gate_total = circuit.size();
    return m;
}

} // namespace qsynth
