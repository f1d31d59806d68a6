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
#include "qsynth/simulator.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qsynth/errors.hpp"

namespace qsynth {

namespace {

// Plain real arithmetic; std::complex operator* carries NaN recovery code in the hot loop.
inline Complex mul(Complex a, Complex b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Neumaier-compensated complex accumulator.
class CompensatedSum {
  public:
    void add(Complex x) {
        add_part(re_, cre_, x.real());
        add_part(im_, cim_, x.imag());
    }
    [[nodiscard]] Complex value() const { return {re_ + cre_, im_ + cim_}; }

  private:
    static void add_part(double &sum, double &comp, double x) {
        const double t = sum + x;
        comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

void check_params(const Circuit &circuit, std::span<const double> params) {
    if (params.size() != circuit.param_count()) {
        throw DimensionMismatch("expected " + std::to_string(circuit.param_count()) + " parameters, got " +
                                std::to_string(params.size()));
    }
}

void check_dims(const Unitary &u, const Circuit &circuit, std::span<const double> params) {
    if (u.n_qubits() != circuit.n_qubits()) {
        throw DimensionMismatch("unitary has " + std::to_string(u.n_qubits()) + " qubits, circuit has " +
                                std::to_string(circuit.n_qubits()));
    }
    check_params(circuit, params);
}

Complex trace_of(const Matrix &w) {
    CompensatedSum acc;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
        acc.add(w(i, i));
    }
    return acc.value();
}

GateKernel transpose(const GateKernel &k) { return {k.m00, k.m10, k.m01, k.m11}; }

/// sum_{ij} T(i,j) * (D P)(i,j) where D is the derivative-mode gate matrix.
Complex contract_with_derivative(const Matrix &t, const Matrix &p, const Gate &gate, const GateKernel &k) {
    const auto d = static_cast<std::size_t>(p.rows());
    const std::size_t tmask = std::size_t{1} << gate.target;
    const std::size_t cmask = gate.control ? std::size_t{1} << *gate.control : 0;
    CompensatedSum acc;
    for (Eigen::Index col = 0; col < p.cols(); ++col) {
        const Complex *pc = p.data() + col * p.rows();
        const Complex *tc = t.data() + col * t.rows();
        Complex partial{};
        for (std::size_t i0 = 0; i0 < d; ++i0) {
            if ((i0 & tmask) != 0 || (cmask != 0 && (i0 & cmask) == 0)) {
                continue;
            }
            const std::size_t i1 = i0 | tmask;
            const Complex a = pc[i0];
            const Complex b = pc[i1];
            const Complex x0 = mul(k.m00, a) + mul(k.m01, b);
            const Complex x1 = mul(k.m10, a) + mul(k.m11, b);
            partial += mul(tc[i0], x0) + mul(tc[i1], x1);
        }
        acc.add(partial);
    }
    return acc.value();
}

} // namespace

double unitarity_defect(const Matrix &m) {
    const auto n = m.rows();
    return (m.adjoint() * m - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

Unitary::Unitary(Matrix m, double tolerance) : m_(std::move(m)) {
    const auto rows = static_cast<std::size_t>(m_.rows());
    if (m_.rows() != m_.cols() || rows < 2 || !std::has_single_bit(rows)) {
        throw DimensionMismatch("unitary must be square with power-of-two dimension >= 2");
    }
    n_qubits_ = std::countr_zero(rows);
    if (!m_.allFinite()) {
        throw NotUnitary("unitary contains non-finite entries");
    }
    const double defect = unitarity_defect(m_);
    if (!(defect <= tolerance)) {
        throw NotUnitary("matrix is not unitary: max |U^dagger U - I| = " + std::to_string(defect));
    }
}

Unitary Unitary::identity(int n_qubits) {
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    return Unitary(Matrix::Identity(d, d));
}

CostReport make_cost_report(Complex trace, std::size_t dim) {
    const double d = static_cast<double>(dim);
    CostReport r;
    r.trace_re = trace.real();
    r.trace_im = trace.imag();
    r.f = d - trace.real();
    r.c_hst = 1.0 - std::norm(trace) / (d * d);
    r.f_avg = 1.0 - d / (d + 1.0) * r.c_hst;
    r.f_frob = 1.0 - d / (d + 1.0) + (d - r.f) * (d - r.f) / (d * (d + 1.0));
    return r;
}

void apply_gate_columnwise(Matrix &v, const Gate &gate, const GateKernel &k, bool derivative) {
    const auto d = static_cast<std::size_t>(v.rows());
    if (!std::has_single_bit(d) || std::size_t{1} << gate.target >= d ||
        (gate.control && std::size_t{1} << *gate.control >= d)) {
        throw InvalidWire("gate wire out of range for matrix of dimension " + std::to_string(d));
    }
    const std::size_t tmask = std::size_t{1} << gate.target;
    const std::size_t cmask = gate.control ? std::size_t{1} << *gate.control : 0;
    for (Eigen::Index col = 0; col < v.cols(); ++col) {
        Complex *c = v.data() + col * v.rows();
        for (std::size_t i0 = 0; i0 < d; ++i0) {
            if ((i0 & tmask) != 0) {
                continue;
            }
            const std::size_t i1 = i0 | tmask;
            if (cmask != 0 && (i0 & cmask) == 0) {
                if (derivative) {
                    c[i0] = c[i1] = 0.0;
                }
                continue;
            }
            const Complex a = c[i0];
            const Complex b = c[i1];
            c[i0] = mul(k.m00, a) + mul(k.m01, b);
            c[i1] = mul(k.m10, a) + mul(k.m11, b);
        }
    }
}

Matrix apply_circuit(Matrix v, const Circuit &circuit, std::span<const double> params,
                     std::optional<std::size_t> deriv_index) {
    check_params(circuit, params);
    if (static_cast<std::size_t>(v.rows()) != circuit.dim()) {
        throw DimensionMismatch("matrix dimension does not match circuit");
    }
    std::optional<std::pair<std::size_t, std::size_t>> deriv_owner;
    if (deriv_index) {
        if (*deriv_index >= circuit.param_count()) {
            throw InvalidParameter("deriv_index " + std::to_string(*deriv_index) + " out of range");
        }
        deriv_owner = circuit.slot_owners()[*deriv_index];
    }
    const auto gates = circuit.gates();
    for (std::size_t gi = 0; gi < gates.size(); ++gi) {
        if (deriv_owner && deriv_owner->first == gi) {
            apply_gate_columnwise(v, gates[gi], gate_deriv_kernel(gates[gi], params, deriv_owner->second), true);
        } else {
            apply_gate_columnwise(v, gates[gi], gate_kernel(gates[gi], params));
        }
    }
    if (circuit.global_phase() != 0.0) {
        v *= Complex{std::cos(circuit.global_phase()), std::sin(circuit.global_phase())};
    }
    return v;
}

namespace {

struct ForwardPass {
    Matrix w;                          // G_M ... G_1 U^dagger, without global phase
    std::vector<GateKernel> kernels;
    Complex phase;
    Complex trace;                     // Tr(V U^dagger), phase included
};

ForwardPass forward(const Unitary &u, const Circuit &circuit, std::span<const double> params) {
    check_dims(u, circuit, params);
    ForwardPass fp{u.adjoint(), {}, {std::cos(circuit.global_phase()), std::sin(circuit.global_phase())}, {}};
    fp.kernels.reserve(circuit.size());
    for (const auto &g : circuit.gates()) {
        fp.kernels.push_back(gate_kernel(g, params));
        apply_gate_columnwise(fp.w, g, fp.kernels.back());
    }
    fp.trace = fp.phase * trace_of(fp.w);
    return fp;
}

} // namespace

CostReport cost(const Unitary &u, const Circuit &circuit, std::span<const double> params) {
    return make_cost_report(forward(u, circuit, params).trace, u.dim());
}

CostAndGradient cost_and_gradient(const Unitary &u, const Circuit &circuit, std::span<const double> params) {
    ForwardPass fp = forward(u, circuit, params);
    CostAndGradient out{make_cost_report(fp.trace, u.dim()), std::vector<double>(circuit.param_count(), 0.0)};
    if (circuit.param_count() == 0) {
        return out;
    }
    const auto d = static_cast<Eigen::Index>(u.dim());
    // prefix = G_k ... G_1 U^dagger ; suffix_t = (G_M ... G_{k+2})^T, walking k downwards.
    Matrix &prefix = fp.w;
    Matrix suffix_t = Matrix::Identity(d, d);
    const auto gates = circuit.gates();
    for (std::size_t gi = gates.size(); gi-- > 0;) {
        const Gate &g = gates[gi];
        apply_gate_columnwise(prefix, g, fp.kernels[gi].adjoint());
        for (std::size_t role = 0; role < g.param_slots.size(); ++role) {
            const Complex t = contract_with_derivative(suffix_t, prefix, g, gate_deriv_kernel(g, params, role));
            out.gradient[g.param_slots[role]] = -(fp.phase * t).real();
        }
        apply_gate_columnwise(suffix_t, g, transpose(fp.kernels[gi]));
    }
    return out;
}

std::vector<double> gradient(const Unitary &u, const Circuit &circuit, std::span<const double> params) {
    return cost_and_gradient(u, circuit, params).gradient;
}

double gradient_component_direct(const Unitary &u, const Circuit &circuit, std::span<const double> params,
                                 std::size_t index) {
    check_dims(u, circuit, params);
    return -trace_of(apply_circuit(u.adjoint(), circuit, params, index)).real();
}

} // namespace qsynth
