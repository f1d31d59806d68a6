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
#include <doctest.h>

#include <cmath>

#include "qsynth/compressor.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/simulator.hpp"
#include "qsynth/toolkit.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace qsynth;
using fixtures::kPi;

namespace {

Unitary ry_target(double alpha) {
    Circuit c(1);
    c.ry(0);
    std::vector<double> p{alpha};
    return Unitary(circuit_matrix(c, p));
}

double relative_error(double got, long double want) {
    return static_cast<double>(std::abs(static_cast<long double>(got) - want) / std::abs(want));
}

} // namespace

TEST_CASE("Unitary validation") {
    CHECK_THROWS_AS(Unitary(Matrix::Identity(3, 3)), DimensionMismatch);
    CHECK_THROWS_AS(Unitary(Matrix::Identity(2, 4)), DimensionMismatch);
    Matrix m = Matrix::Identity(4, 4);
    m(0, 0) = 1.001;
    CHECK_THROWS_AS(Unitary{m}, NotUnitary);
    CHECK(Unitary::identity(3).dim() == 8);
    CHECK(unitarity_defect(haar_random_unitary(3, 1).matrix()) < 1e-12);
}

TEST_CASE("apply_gate_columnwise basics") {
    Circuit one(1);
    one.u3(0);
    Matrix v = Matrix::Identity(2, 2);
    apply_gate_columnwise(v, one.gate(0), pauli_x_kernel());
    CHECK(std::abs(v(0, 1) - 1.0) == 0.0);
    CHECK(std::abs(v(1, 0) - 1.0) == 0.0);

    const Matrix h = haar_random_unitary(2, 3).matrix();
    Circuit two(2);
    two.u3(1);
    Matrix w = h;
    apply_gate_columnwise(w, two.gate(0), GateKernel::identity());
    CHECK(max_abs_diff(w, h) == 0.0);

    two.cx(1, 0);
    Matrix cnot = Matrix::Identity(4, 4);
    apply_gate_columnwise(cnot, two.gate(1), pauli_x_kernel());
    CHECK(max_abs_diff(cnot, gate_matrix(two.gate(1), {}, 2)) == 0.0);
}

TEST_CASE("apply_circuit matches the dense oracle") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(4));
        auto bc = fixtures::random_circuit(n, 1 + rng.index(30), rng);
        bc.circuit.set_global_phase(rng.uniform(-kPi, kPi));
        const Matrix v = apply_circuit(Matrix::Identity(static_cast<Eigen::Index>(bc.circuit.dim()),
                                                        static_cast<Eigen::Index>(bc.circuit.dim())),
                                       bc.circuit, bc.params);
        CHECK(oracle::max_abs_diff(oracle::circuit_matrix(bc.circuit, oracle::widen(bc.params)), v) < 1e-12);
    }
}

TEST_CASE("apply_circuit small cases") {
    Circuit empty(2);
    const Matrix h = haar_random_unitary(2, 4).matrix();
    CHECK(max_abs_diff(apply_circuit(h, empty, {}), h) == 0.0);

    Circuit x(1);
    x.u3(0);
    std::vector<double> px{kPi, 0, kPi};
    const Matrix xm = apply_circuit(Matrix::Identity(2, 2), x, px);
    CHECK(std::abs(xm(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(xm(0, 0)) < 1e-15);

    Circuit ry(1);
    ry.ry(0);
    std::vector<double> p0{0.0};
    const Matrix d = apply_circuit(Matrix::Identity(2, 2), ry, p0, 0);
    CHECK(std::abs(d(0, 0)) < 1e-15);
    CHECK(std::abs(d(0, 1) + 0.5) < 1e-15);
    CHECK(std::abs(d(1, 0) - 0.5) < 1e-15);
    CHECK(std::abs(d(1, 1)) < 1e-15);
}

TEST_CASE("cost closed forms") {
    SUBCASE("exact synthesis") {
        Rng rng(22);
        const auto bc = fixtures::random_circuit(3, 20, rng);
        const Unitary u(circuit_matrix(bc));
        const auto r = cost(u, bc.circuit, bc.params);
        CHECK(std::abs(r.f) < 1e-12);
        CHECK(r.f_avg == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.f_frob == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(r.c_hst) < 1e-12);
    }
    SUBCASE("X against identity") {
        Circuit c(1);
        c.u3(0);
        std::vector<double> p{kPi, 0, kPi};
        const auto r = cost(Unitary::identity(1), c, p);
        CHECK(r.f == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(r.c_hst == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("RY against RY") {
        Rng rng(23);
        Circuit c(1);
        c.ry(0);
        for (int i = 0; i < 50; ++i) {
            const double alpha = rng.uniform(-kPi, kPi), theta = rng.uniform(-kPi, kPi);
            std::vector<double> p{theta};
            const auto u = ry_target(alpha);
            CHECK(cost(u, c, p).f == doctest::Approx(2 - 2 * std::cos((theta - alpha) / 2)).epsilon(1e-13));
            CHECK(gradient(u, c, p)[0] == doctest::Approx(std::sin((theta - alpha) / 2)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cost report fidelity relations") {
    Rng rng(24);
    for (int i = 0; i < 200; ++i) {
        const int n = 1 + static_cast<int>(rng.index(3));
        const Complex t{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const std::size_t d = dim_of(n);
        const auto r = make_cost_report(t * static_cast<double>(d) * 0.7, d);
        const double dd = static_cast<double>(d);
        CHECK(r.f_avg == doctest::Approx(1 - dd / (dd + 1) * r.c_hst).epsilon(1e-14));
        CHECK(r.f_frob <= r.f_avg + 1e-15);
    }
}

TEST_CASE("gradient vanishes at an exact minimum") {
    const auto bc = build_ansatz({2, 3, {}});
    const Unitary u(circuit_matrix(bc));
    for (double g : gradient(u, bc.circuit, bc.params)) {
        CHECK(std::abs(g) < 1e-9);
    }
}

TEST_CASE("gradient matches long-double central differences") {
    Rng rng(25);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(4));
        const auto bc = fixtures::random_parameterized(n, 1 + rng.index(50), rng);
        const Unitary u = haar_random_unitary(n, rng.next());
        const auto fd = oracle::fd_gradient(oracle::from(u.matrix()), bc.circuit, bc.params);
        const auto g = gradient(u, bc.circuit, bc.params);
        REQUIRE(g.size() == fd.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(relative_error(g[i], fd[i]) < 1e-6);
        }
    }
}

TEST_CASE("3-qubit 12-parameter gradient") {
    Rng rng(26);
    const auto bc = fixtures::random_parameterized(3, 12, rng);
    REQUIRE(bc.circuit.param_count() == 12);
    const Unitary u = haar_random_unitary(3, 26);
    const auto fd = oracle::fd_gradient(oracle::from(u.matrix()), bc.circuit, bc.params);
    const auto g = gradient(u, bc.circuit, bc.params);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(relative_error(g[i], fd[i]) < 1e-6);
    }
}

TEST_CASE("reverse sweep agrees with direct substitution") {
    Rng rng(27);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(4));
        const auto bc = fixtures::random_parameterized(n, 1 + rng.index(30), rng);
        const Unitary u = haar_random_unitary(n, rng.next());
        const auto g = gradient(u, bc.circuit, bc.params);
        for (std::size_t i = 0; i < g.size(); ++i) {
            CHECK(std::abs(g[i] - gradient_component_direct(u, bc.circuit, bc.params, i)) < 1e-12);
        }
    }
}

TEST_CASE("cost_and_gradient composes cost and gradient exactly") {
    Rng rng(28);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng.index(3));
        const auto bc = fixtures::random_parameterized(n, 1 + rng.index(20), rng);
        const Unitary u = haar_random_unitary(n, rng.next());
        const auto both = cost_and_gradient(u, bc.circuit, bc.params);
        CHECK(both.report.f == cost(u, bc.circuit, bc.params).f);
        CHECK(both.gradient == gradient(u, bc.circuit, bc.params));
    }
    Circuit fixed(2);
    fixed.cx(0, 1);
    CHECK(cost_and_gradient(Unitary::identity(2), fixed, {}).gradient.empty());

    const auto ansatz = build_ansatz({2, 3, {}});
    std::vector<double> p(ansatz.params.size());
    for (auto &x : p) {
        x = rng.uniform(-kPi, kPi);
    }
    const Unitary h = haar_random_unitary(2, 29);
    const auto both = cost_and_gradient(h, ansatz.circuit, p);
    CHECK(both.report.f == cost(h, ansatz.circuit, p).f);
    CHECK(both.gradient == gradient(h, ansatz.circuit, p));
}

TEST_CASE("dimension checks") {
    Circuit c(2);
    c.u3(0);
    std::vector<double> p{0, 0, 0};
    CHECK_THROWS_AS(cost(Unitary::identity(3), c, p), DimensionMismatch);
    std::vector<double> short_p{0, 0};
    CHECK_THROWS_AS(cost(Unitary::identity(2), c, short_p), DimensionMismatch);
}
