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
#include "qsynth/ansatz.hpp"

#include "qsynth/errors.hpp"

namespace qsynth {

std::vector<QubitPair> default_pair_schedule(int n_qubits) {
    std::vector<QubitPair> forward;
    for (int a = 0; a < n_qubits; ++a) {
        for (int b = a + 1; b < n_qubits; ++b) {
            forward.emplace_back(a, b);
        }
    }
    std::vector<QubitPair> out = forward;
    for (const auto &[a, b] : forward) {
        out.emplace_back(b, a);
    }
    return out;
}

std::vector<QubitPair> AnsatzSpec::schedule() const {
    return pair_schedule.empty() ? default_pair_schedule(n_qubits) : pair_schedule;
}

void AnsatzSpec::validate() const {
    if (n_qubits < 2) {
        throw InvalidParameter("ansatz needs at least 2 qubits");
    }
    if (layers < 1) {
        throw InvalidParameter("ansatz needs at least one layer");
    }
    for (const auto &[a, b] : pair_schedule) {
        if (a == b || a < 0 || b < 0 || a >= n_qubits || b >= n_qubits) {
            throw InvalidWire("invalid pair in schedule");
        }
    }
}

void append_layer(Circuit &circuit, QubitPair pair) {
    circuit.u3(pair.first);
    circuit.u3(pair.second);
    circuit.cry(pair.first, pair.second);
}

} // namespace qsynth
