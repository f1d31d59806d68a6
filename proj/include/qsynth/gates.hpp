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

#include <span>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/types.hpp"

namespace qsynth {

/// 2x2 matrix applied to the target qubit of a gate.
struct GateKernel {
    Complex m00{1.0, 0.0};
    Complex m01{0.0, 0.0};
    Complex m10{0.0, 0.0};
    Complex m11{1.0, 0.0};

    static GateKernel identity() { return {}; }

    [[nodiscard]] GateKernel operator*(const GateKernel &rhs) const {
        return {m00 * rhs.m00 + m01 * rhs.m10, m00 * rhs.m01 + m01 * rhs.m11,
                m10 * rhs.m00 + m11 * rhs.m10, m10 * rhs.m01 + m11 * rhs.m11};
    }
    [[nodiscard]] GateKernel adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
    [[nodiscard]] GateKernel scaled(Complex s) const { return {s * m00, s * m01, s * m10, s * m11}; }
    [[nodiscard]] double max_abs_diff(const GateKernel &o) const;
    [[nodiscard]] Matrix to_matrix() const;
};

enum class U3Param { Theta = 0, Phi = 1, Lambda = 2 };

GateKernel u3_kernel(double theta, double phi, double lambda);

/// Partial derivative of u3_kernel. Built by shifting the chosen angle
/// (theta by pi with a factor 1/2, phi/lambda by pi/2) and zeroing the
/// entries that do not depend on it.
GateKernel u3_deriv_kernel(double theta, double phi, double lambda, U3Param which);

GateKernel ry_kernel(double theta);
/// Kernel applied to the target of CRY(theta) when the control is 1.
GateKernel cry_kernel(double theta);
GateKernel phase_kernel(double phi);
GateKernel hadamard_kernel();
GateKernel pauli_x_kernel();
GateKernel pauli_z_kernel();

/// Kernel of `gate` evaluated at `params`.
GateKernel gate_kernel(const Gate &gate, std::span<const double> params);

/// Derivative kernel of `gate` with respect to its `role`-th parameter.
GateKernel gate_deriv_kernel(const Gate &gate, std::span<const double> params, std::size_t role);

/// Full 2^n x 2^n matrix of a single gate, built from Kronecker products
/// (identity on untouched wires, projector split for controlled gates).
Matrix gate_matrix(const Gate &gate, std::span<const double> params, int n_qubits);

/// Dense product of gate_matrix over the circuit, times e^{i*global_phase}.
Matrix circuit_matrix(const Circuit &circuit, std::span<const double> params);
inline Matrix circuit_matrix(const BoundCircuit &bc) { return circuit_matrix(bc.circuit, bc.params); }

/// M = e^{i*phase} * u3_kernel(theta, phi, lambda), theta in [0, pi].
struct U3Angles {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
    double phase = 0.0;
};

/// Factors a 2x2 unitary into U3 angles plus a global phase. The phase is chosen
/// so the (0,0) entry is real non-negative; at theta = 0 or pi, phi is 0 and the
/// remaining freedom goes into lambda.
U3Angles u3_from_kernel(const GateKernel &m);

// --- controlled-RY special values ---------------------------------------------

enum class CryClass { Identity, CZlike, Generic };

struct CryClassification {
    CryClass kind = CryClass::Generic;
    /// +1 near +pi, -1 near -pi; 0 otherwise.
    int sign = 0;
    /// Angle reduced into (-pi, pi].
    double reduced = 0.0;
};

inline constexpr double kDefaultSnapEpsilon = 1e-2;

/// Reduces theta mod 2pi into (-pi, pi] and classifies it against 0 and +-pi.
CryClassification classify_cry(double theta, double eps);

struct CryExpansion {
    /// Gates on wires of the original gate; n_qubits = max(control, target) + 1.
    BoundCircuit sequence;
    double phase_delta = 0.0;
    CryClass kind = CryClass::Generic;
};

/// Rewrites CRY(theta) over {RY, U3, H, CX, CZ}. Identity class: no entangler;
/// CZ class: one CZ with single-qubit dressings; otherwise two CX. In the first two
/// cases theta is replaced by the nearest multiple of pi (4pi-periodicity respected),
/// so the product is exact for the snapped angle.
CryExpansion expand_cry(const Gate &gate, double theta, double snap_epsilon = kDefaultSnapEpsilon);

} // namespace qsynth
