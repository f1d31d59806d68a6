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

#include <optional>
#include <span>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/gates.hpp"
#include "qsynth/types.hpp"

namespace qsynth {

/// max |M^dagger M - I|
double unitarity_defect(const Matrix &m);

/// Validated square unitary of dimension 2^n.
class Unitary {
  public:
    static constexpr double kTolerance = 1e-10;

    /// Throws DimensionMismatch for non power-of-two / non-square input and
    /// NotUnitary when the defect exceeds `tolerance`.
    explicit Unitary(Matrix m, double tolerance = kTolerance);

    static Unitary identity(int n_qubits);

    [[nodiscard]] int n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Matrix adjoint() const { return m_.adjoint(); }

  private:
    Matrix m_;
    int n_qubits_ = 0;
};

/// Cost and fidelity figures derived from t = Tr(V U^dagger).
struct CostReport {
    double f = 0.0;       ///< d - Re t
    double trace_re = 0.0;
    double trace_im = 0.0;
    double c_hst = 0.0;   ///< 1 - |t|^2 / d^2
    double f_avg = 0.0;   ///< 1 - d/(d+1) * c_hst
    double f_frob = 0.0;  ///< 1 - d/(d+1) + (d - f)^2 / (d (d+1))
};

CostReport make_cost_report(Complex trace, std::size_t dim);

/// Applies one gate to every column of `v` in place (v <- G v).
/// Rows whose control bit is 0 are left unchanged, or zeroed when `derivative`
/// is set (the derivative of a controlled gate vanishes on the control-0 block).
void apply_gate_columnwise(Matrix &v, const Gate &gate, const GateKernel &kernel, bool derivative = false);

/// Applies the circuit to `v`, including e^{i*global_phase}. With `deriv_index`,
/// the gate owning that slot is replaced by its derivative kernel.
Matrix apply_circuit(Matrix v, const Circuit &circuit, std::span<const double> params,
                     std::optional<std::size_t> deriv_index = std::nullopt);

CostReport cost(const Unitary &u, const Circuit &circuit, std::span<const double> params);

/// df/dx_i = -Re Tr(dV/dx_i U^dagger), computed by a reverse sweep over the
/// gate list (uncompute the prefix, accumulate the transposed suffix).
std::vector<double> gradient(const Unitary &u, const Circuit &circuit, std::span<const double> params);

/// Same component computed by direct derivative substitution and a full pass.
double gradient_component_direct(const Unitary &u, const Circuit &circuit, std::span<const double> params,
                                 std::size_t index);

struct CostAndGradient {
    CostReport report;
    std::vector<double> gradient;
};

CostAndGradient cost_and_gradient(const Unitary &u, const Circuit &circuit, std::span<const double> params);

} // namespace qsynth
