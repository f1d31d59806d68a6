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
#include <utility>
#include <vector>

#include "qsynth/circuit.hpp"

namespace qsynth {

/// (control, target)
using QubitPair = std::pair<int, int>;

/// All pairs a < b in lexicographic order, followed by the same pairs reversed.
/// n = 3: (0,1) (0,2) (1,2) (1,0) (2,0) (2,1)
std::vector<QubitPair> default_pair_schedule(int n_qubits);

/// U3 on control (3) + U3 on target (3) + CRY (1).
inline constexpr std::size_t kParamsPerLayer = 7;

struct AnsatzSpec {
    int n_qubits = 2;
    std::size_t layers = 1;
    /// Cycled round-robin; empty selects default_pair_schedule.
    std::vector<QubitPair> pair_schedule;

    [[nodiscard]] std::vector<QubitPair> schedule() const;
    void validate() const;
};

/// Appends U3(a), U3(b), CRY(a -> b). New parameter slots are appended at the end.
void append_layer(Circuit &circuit, QubitPair pair);

} // namespace qsynth
