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
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qsynth {

enum class GateKind : std::uint8_t { U3, RY, CRY, CX, CZ, H, Phase };

/// Number of free parameters carried by a gate of this kind.
constexpr std::size_t param_arity(GateKind kind) {
    switch (kind) {
    case GateKind::U3:
        return 3;
    case GateKind::RY:
    case GateKind::CRY:
    case GateKind::Phase:
        return 1;
    default:
        return 0;
    }
}

constexpr bool is_controlled(GateKind kind) {
    return kind == GateKind::CRY || kind == GateKind::CX || kind == GateKind::CZ;
}

std::string_view gate_name(GateKind kind);

struct Gate {
    GateKind kind = GateKind::U3;
    int target = 0;
    std::optional<int> control;
    /// Indices into the circuit's parameter vector; for U3 in (theta, phi, lambda) order.
    std::vector<std::size_t> param_slots;

    [[nodiscard]] bool touches(int wire) const {
        return target == wire || (control && *control == wire);
    }
};

/// Ordered gate list. Gates listed first act first, so the circuit unitary is
/// e^{i*global_phase} * G_M ... G_2 G_1.
class Circuit {
  public:
    Circuit() : Circuit(1) {}
    explicit Circuit(int n_qubits);

    /// Appends a gate and allocates fresh parameter slots for it. Returns the gate index.
    std::size_t add(GateKind kind, int target, std::optional<int> control = std::nullopt);

    std::size_t u3(int q) { return add(GateKind::U3, q); }
    std::size_t ry(int q) { return add(GateKind::RY, q); }
    std::size_t phase(int q) { return add(GateKind::Phase, q); }
    std::size_t h(int q) { return add(GateKind::H, q); }
    std::size_t cry(int control, int target) { return add(GateKind::CRY, target, control); }
    std::size_t cx(int control, int target) { return add(GateKind::CX, target, control); }
    std::size_t cz(int control, int target) { return add(GateKind::CZ, target, control); }

    /// Removes gate `index` together with its parameter slots. Slots of the
    /// remaining gates are renumbered and `params` is compacted to match.
    void erase_gate(std::size_t index, std::vector<double> &params);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return std::size_t{1} << n_qubits_; }
    [[nodiscard]] std::span<const Gate> gates() const noexcept { return gates_; }
    [[nodiscard]] const Gate &gate(std::size_t i) const { return gates_.at(i); }
    [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
    [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
    [[nodiscard]] std::size_t param_count() const noexcept { return param_count_; }
    [[nodiscard]] std::size_t count(GateKind kind) const;

    [[nodiscard]] double global_phase() const noexcept { return global_phase_; }
    void set_global_phase(double phase) { global_phase_ = phase; }
    void add_global_phase(double delta) { global_phase_ += delta; }

    /// For each parameter slot: (gate index, position within that gate's slot list).
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> slot_owners() const;

    /// Throws InvalidWire / InvalidParameter if any structural invariant is broken.
    void validate() const;

  private:
    int n_qubits_;
    std::vector<Gate> gates_;
    std::size_t param_count_ = 0;
    double global_phase_ = 0.0;
};

/// A circuit together with concrete values for all of its parameter slots.
struct BoundCircuit {
    Circuit circuit;
    std::vector<double> params;
};

} // namespace qsynth
