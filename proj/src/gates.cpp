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
#include "qsynth/gates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qsynth/errors.hpp"

namespace qsynth {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char *what) {
    if (!std::isfinite(x)) {
        throw InvalidParameter(std::string(what) + " must be finite");
    }
}

Complex expi(double x) { return {std::cos(x), std::sin(x)}; }

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Kronecker product over all wires; factors[q] acts on qubit q (qubit 0 is the LSB).
Matrix kron_wires(const std::vector<Matrix> &factors) {
    Matrix out = Matrix::Identity(1, 1);
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        out = kron(out, *it);
    }
    return out;
}

double param_at(std::span<const double> params, const Gate &g, std::size_t role) {
    const auto slot = g.param_slots.at(role);
    if (slot >= params.size()) {
        throw DimensionMismatch("parameter slot " + std::to_string(slot) + " outside parameter vector");
    }
    return params[slot];
}

} // namespace

double GateKernel::max_abs_diff(const GateKernel &o) const {
    return std::max({std::abs(m00 - o.m00), std::abs(m01 - o.m01), std::abs(m10 - o.m10),
                     std::abs(m11 - o.m11)});
}

Matrix GateKernel::to_matrix() const {
    Matrix m(2, 2);
    m << m00, m01, m10, m11;
    return m;
}

GateKernel u3_kernel(double theta, double phi, double lambda) {
    require_finite(theta, "theta");
    require_finite(phi, "phi");
    require_finite(lambda, "lambda");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {Complex{c, 0.0}, -expi(lambda) * s, expi(phi) * s, expi(lambda + phi) * c};
}

GateKernel u3_deriv_kernel(double theta, double phi, double lambda, U3Param which) {
    switch (which) {
    case U3Param::Theta:
        return u3_kernel(theta + kPi, phi, lambda).scaled(0.5);
    case U3Param::Phi: {
        auto k = u3_kernel(theta, phi + kPi / 2.0, lambda);
        k.m00 = k.m01 = 0.0;
        return k;
    }
    case U3Param::Lambda: {
        auto k = u3_kernel(theta, phi, lambda + kPi / 2.0);
        k.m00 = k.m10 = 0.0;
        return k;
    }
    }
    throw InvalidParameter("unknown U3 parameter");
}

GateKernel ry_kernel(double theta) {
    require_finite(theta, "theta");
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return {Complex{c, 0.0}, Complex{-s, 0.0}, Complex{s, 0.0}, Complex{c, 0.0}};
}

GateKernel cry_kernel(double theta) { return ry_kernel(theta); }

GateKernel phase_kernel(double phi) {
    require_finite(phi, "phi");
    return {Complex{1.0, 0.0}, Complex{}, Complex{}, expi(phi)};
}

GateKernel hadamard_kernel() {
    const double r = std::numbers::sqrt2 / 2.0;
    return {Complex{r, 0.0}, Complex{r, 0.0}, Complex{r, 0.0}, Complex{-r, 0.0}};
}

GateKernel pauli_x_kernel() { return {Complex{}, Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{}}; }

GateKernel pauli_z_kernel() { return {Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{-1.0, 0.0}}; }

GateKernel gate_kernel(const Gate &gate, std::span<const double> params) {
    switch (gate.kind) {
    case GateKind::U3:
        return u3_kernel(param_at(params, gate, 0), param_at(params, gate, 1), param_at(params, gate, 2));
    case GateKind::RY:
        return ry_kernel(param_at(params, gate, 0));
    case GateKind::CRY:
        return cry_kernel(param_at(params, gate, 0));
    case GateKind::Phase:
        return phase_kernel(param_at(params, gate, 0));
    case GateKind::CX:
        return pauli_x_kernel();
    case GateKind::CZ:
        return pauli_z_kernel();
    case GateKind::H:
        return hadamard_kernel();
    }
    throw InvalidParameter("unknown gate kind");
}

GateKernel gate_deriv_kernel(const Gate &gate, std::span<const double> params, std::size_t role) {
    if (role >= gate.param_slots.size()) {
        throw InvalidParameter("gate has no parameter at position " + std::to_string(role));
    }
    switch (gate.kind) {
    case GateKind::U3:
        return u3_deriv_kernel(param_at(params, gate, 0), param_at(params, gate, 1),
                               param_at(params, gate, 2), static_cast<U3Param>(role));
    case GateKind::RY:
    case GateKind::CRY:
        return ry_kernel(param_at(params, gate, 0) + kPi).scaled(0.5);
    case GateKind::Phase: {
        auto k = phase_kernel(param_at(params, gate, 0) + kPi / 2.0);
        k.m00 = 0.0;
        return k;
    }
    default:
        break;
    }
    throw InvalidParameter("gate kind has no parameters");
}

Matrix gate_matrix(const Gate &gate, std::span<const double> params, int n_qubits) {
    auto in_range = [n_qubits](int q) { return q >= 0 && q < n_qubits; };
    if (!in_range(gate.target) || (gate.control && (!in_range(*gate.control) || *gate.control == gate.target))) {
        throw InvalidWire("gate wires out of range for " + std::to_string(n_qubits) + " qubits");
    }
    const Matrix id2 = Matrix::Identity(2, 2);
    const Matrix kernel = gate_kernel(gate, params).to_matrix();
    std::vector<Matrix> factors(static_cast<std::size_t>(n_qubits), id2);
    factors[static_cast<std::size_t>(gate.target)] = kernel;
    if (!gate.control) {
        return kron_wires(factors);
    }
    Matrix p0 = Matrix::Zero(2, 2);
    Matrix p1 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    const auto c = static_cast<std::size_t>(*gate.control);
    factors[c] = p1;
    Matrix active = kron_wires(factors);
    std::vector<Matrix> passive(static_cast<std::size_t>(n_qubits), id2);
    passive[c] = p0;
    return kron_wires(passive) + active;
}

Matrix circuit_matrix(const Circuit &circuit, std::span<const double> params) {
    const auto d = static_cast<Eigen::Index>(circuit.dim());
    Matrix out = Matrix::Identity(d, d);
    for (const auto &g : circuit.gates()) {
        out = gate_matrix(g, params, circuit.n_qubits()) * out;
    }
    return expi(circuit.global_phase()) * out;
}

U3Angles u3_from_kernel(const GateKernel &m) {
    const double c = std::abs(m.m00);
    const double s = std::abs(m.m10);
    U3Angles out;
    out.theta = 2.0 * std::atan2(s, c);
    if (c == 0.0) {
        out.phase = std::arg(m.m10);
        out.phi = 0.0;
        out.lambda = std::arg(-m.m01) - out.phase;
        return out;
    }
    out.phase = std::arg(m.m00);
    const Complex unphase = expi(-out.phase);
    out.phi = s == 0.0 ? 0.0 : std::arg(unphase * m.m10);
    if (c >= s) {
        out.lambda = std::arg(unphase * m.m11) - out.phi;
    } else {
        out.lambda = std::arg(-unphase * m.m01);
    }
    return out;
}

CryClassification classify_cry(double theta, double eps) {
    double r = std::remainder(theta, 2.0 * kPi);
    if (r <= -kPi) {
        r += 2.0 * kPi;
    }
    CryClassification out{CryClass::Generic, 0, r};
    if (std::abs(r) < eps) {
        out.kind = CryClass::Identity;
    } else if (std::abs(r - kPi) < eps) {
        out = {CryClass::CZlike, +1, r};
    } else if (std::abs(r + kPi) < eps) {
        out = {CryClass::CZlike, -1, r};
    }
    return out;
}

CryExpansion expand_cry(const Gate &gate, double theta, double snap_epsilon) {
    if (gate.kind != GateKind::CRY || !gate.control) {
        throw InvalidParameter("expand_cry expects a CRY gate");
    }
    require_finite(theta, "theta");
    const int c = *gate.control;
    const int t = gate.target;
    CryExpansion out{{Circuit(std::max(c, t) + 1), {}}, 0.0, classify_cry(theta, snap_epsilon).kind};
    auto &circ = out.sequence.circuit;
    auto &p = out.sequence.params;
    auto push_u3 = [&](int q, double th, double ph, double la) {
        circ.u3(q);
        p.insert(p.end(), {th, ph, la});
    };

    switch (out.kind) {
    case CryClass::Identity: {
        // CRY is 4pi-periodic: at odd multiples of 2pi the controlled block is -I,
        // which is a Z on the control.
        const double snapped = 2.0 * kPi * std::round(theta / (2.0 * kPi));
        if (std::cos(snapped / 2.0) < 0.0) {
            push_u3(c, 0.0, 0.0, kPi);
        }
        break;
    }
    case CryClass::CZlike: {
        // Controlled block at theta = k*pi (k odd) is -i*s*Y with s = sin(theta/2) = +-1.
        // C(-i s Y) = Phase_c(-s pi/2) . S_t . H_t . CZ . H_t . Sdg_t
        const double snapped = kPi * (2.0 * std::round((theta - kPi) / (2.0 * kPi)) + 1.0);
        const double s = std::sin(snapped / 2.0) > 0.0 ? 1.0 : -1.0;
        push_u3(t, 0.0, 0.0, -kPi / 2.0);
        circ.h(t);
        circ.cz(c, t);
        circ.h(t);
        push_u3(t, 0.0, 0.0, kPi / 2.0);
        push_u3(c, 0.0, 0.0, -s * kPi / 2.0);
        break;
    }
    case CryClass::Generic:
        circ.ry(t);
        p.push_back(theta / 2.0);
        circ.cx(c, t);
        circ.ry(t);
        p.push_back(-theta / 2.0);
        circ.cx(c, t);
        break;
    }
    return out;
}

} // namespace qsynth
