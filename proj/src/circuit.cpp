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
#include "qsynth/circuit.hpp"

#include <algorithm>
#include <string>

#include "qsynth/errors.hpp"

namespace qsynth {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
    case GateKind::U3:
        return "u3";
    case GateKind::RY:
        return "ry";
    case GateKind::CRY:
        return "cry";
    case GateKind::CX:
        return "cx";
    case GateKind::CZ:
        return "cz";
    case GateKind::H:
        return "h";
    case GateKind::Phase:
        return "phase";
    }
    return "?";
}

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 16) {
        throw InvalidWire("circuit qubit count must be in [1, 16], got " + std::to_string(n_qubits));
    }
}

std::size_t Circuit::add(GateKind kind, int target, std::optional<int> control) {
    auto wire_ok = [this](int q) { return q >= 0 && q < n_qubits_; };
    if (!wire_ok(target)) {
        throw InvalidWire("target qubit " + std::to_string(target) + " out of range");
    }
    if (is_controlled(kind) != control.has_value()) {
        throw InvalidWire(std::string(gate_name(kind)) +
                          (control ? " does not take a control qubit" : " requires a control qubit"));
    }
    if (control && (!wire_ok(*control) || *control == target)) {
        throw InvalidWire("invalid control qubit " + std::to_string(*control));
    }
    Gate g{kind, target, control, {}};
    for (std::size_t i = 0; i < param_arity(kind); ++i) {
        g.param_slots.push_back(param_count_++);
    }
    gates_.push_back(std::move(g));
    return gates_.size() - 1;
}

void Circuit::erase_gate(std::size_t index, std::vector<double> &params) {
    if (index >= gates_.size()) {
        throw InvalidParameter("erase_gate: index out of range");
    }
    if (params.size() != param_count_) {
        throw DimensionMismatch("erase_gate: parameter vector length mismatch");
    }
    std::vector<std::size_t> removed = gates_[index].param_slots;
    std::sort(removed.begin(), removed.end());
    gates_.erase(gates_.begin() + static_cast<std::ptrdiff_t>(index));

    auto shift = [&removed](std::size_t slot) {
        return slot - static_cast<std::size_t>(
                          std::lower_bound(removed.begin(), removed.end(), slot) - removed.begin());
    };
    for (auto &g : gates_) {
        for (auto &s : g.param_slots) {
            s = shift(s);
        }
    }
    for (auto it = removed.rbegin(); it != removed.rend(); ++it) {
        params.erase(params.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    param_count_ -= removed.size();
}

std::size_t Circuit::count(GateKind kind) const {
    return static_cast<std::size_t>(
        std::count_if(gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind == kind; }));
}

std::vector<std::pair<std::size_t, std::size_t>> Circuit::slot_owners() const {
    std::vector<std::pair<std::size_t, std::size_t>> owners(param_count_, {gates_.size(), 0});
    for (std::size_t gi = 0; gi < gates_.size(); ++gi) {
        const auto &slots = gates_[gi].param_slots;
        for (std::size_t r = 0; r < slots.size(); ++r) {
            owners.at(slots[r]) = {gi, r};
        }
    }
    return owners;
}

void Circuit::validate() const {
    std::vector<int> refs(param_count_, 0);
    for (const auto &g : gates_) {
        if (g.target < 0 || g.target >= n_qubits_) {
            throw InvalidWire("target out of range");
        }
        if (is_controlled(g.kind) != g.control.has_value()) {
            throw InvalidWire("control presence does not match gate kind");
        }
        if (g.control && (*g.control < 0 || *g.control >= n_qubits_ || *g.control == g.target)) {
            throw InvalidWire("invalid control wire");
        }
        if (g.param_slots.size() != param_arity(g.kind)) {
            throw InvalidParameter("parameter slot count does not match gate kind");
        }
        for (auto s : g.param_slots) {
            if (s >= param_count_) {
                throw InvalidParameter("parameter slot out of range");
            }
            ++refs[s];
        }
    }
    if (std::any_of(refs.begin(), refs.end(), [](int r) { return r != 1; })) {
        throw InvalidParameter("every parameter slot must be referenced by exactly one gate");
    }
}

} // namespace qsynth
