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

#include "qsynth/backend.hpp"
#include "qsynth/dfe_emulator.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/toolkit.hpp"
#include "support/fixtures.hpp"

using namespace qsynth;
using namespace qsynth::dfe;

namespace {

std::vector<FixedComplex> quantize_column(const Matrix &m, Eigen::Index col, Saturation &sat) {
    std::vector<FixedComplex> out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        out.push_back(fx_encode(m(r, col), sat));
    }
    return out;
}

DfeConfig no_overhead() {
    DfeConfig c;
    c.overhead_seconds = 0.0;
    return c;
}

} // namespace

TEST_CASE("partner offsets") {
    CHECK(partner_offset(89, 3, 9) == -8);
    CHECK(89 + partner_offset(89, 3, 9) == 81);
    CHECK(partner_offset(0, 0, 1) == 1);
    CHECK(partner_offset(5, 2, 3) == -4);
    CHECK(partner_offset(1, 2, 3) == 4);
}

TEST_CASE("stream_gate with the identity kernel is bit-exact") {
    Saturation sat;
    const Matrix u = haar_random_unitary(4, 41).matrix();
    const auto col = quantize_column(u, 3, sat);
    Circuit c(4);
    c.u3(2);
    c.cry(0, 3);
    const auto k = FixedKernel::quantize(GateKernel::identity(), sat);
    CHECK(stream_gate(col, 4, c.gate(0), k, sat) == col);
    CHECK(stream_gate(col, 4, c.gate(1), k, sat) == col);
}

TEST_CASE("stream_gate tracks the double simulator") {
    Rng rng(42);
    const int n = 5;
    for (int trial = 0; trial < 50; ++trial) {
        Saturation sat;
        const Matrix u = haar_random_unitary(n, rng.next()).matrix();
        const auto bc = fixtures::random_circuit(n, 1, rng);
        const Gate &g = bc.circuit.gate(0);
        const GateKernel k = gate_kernel(g, bc.params);
        const auto col_index = static_cast<Eigen::Index>(rng.index(32));
        const auto col = quantize_column(u, col_index, sat);
        const auto got = stream_gate(col, n, g, FixedKernel::quantize(k, sat), sat);

        Matrix v(32, 1);
        for (std::size_t i = 0; i < col.size(); ++i) {
            v(static_cast<Eigen::Index>(i), 0) = fx_decode(col[i]);
        }
        apply_gate_columnwise(v, g, k);
        for (std::size_t i = 0; i < got.size(); ++i) {
            const Complex want = v(static_cast<Eigen::Index>(i), 0);
            CHECK(std::abs(fx_decode(got[i]).real() - want.real()) < 4 * kFixedLsb);
            CHECK(std::abs(fx_decode(got[i]).imag() - want.imag()) < 4 * kFixedLsb);
        }
        CHECK_FALSE(sat.hit);
    }
}

TEST_CASE("controlled gate leaves control-0 basis columns alone") {
    Circuit c(3);
    c.cx(1, 0);
    Saturation sat;
    const auto x = FixedKernel::quantize(pauli_x_kernel(), sat);
    for (std::size_t k = 0; k < 8; ++k) {
        if ((k >> 1) & 1U) {
            continue;
        }
        std::vector<FixedComplex> basis(8);
        basis[k] = fx_encode(Complex{1.0, 0.0}, sat);
        CHECK(stream_gate(basis, 3, c.gate(0), x, sat) == basis);
    }
}

TEST_CASE("predict_time worked values") {
    const DfeConfig c = no_overhead();
    CHECK(predict_time(5, 3, 50, c) == 1024.0 / 3.5e8);
    CHECK(predict_time(9, 0, 432, c) == std::pow(4.0, 9) / 1.4e9 * 4.0);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", predict_time(9, 0, 432, c));
    CHECK(std::string(buf) == "7.490e-04");
    DfeConfig t0;
    Rng rng(43);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + static_cast<int>(rng.index(12));
        const std::size_t p = rng.index(300), g = rng.index(1000);
        CHECK(predict_time(n, p, g, t0) == predict_time(n, p, g, c) + 1e-3);
    }
}

TEST_CASE("cycle report shapes") {
    const DfeConfig c = no_overhead();
    const auto r = cycle_report(5, 3, 50, c);
    CHECK(r.passes == 1);
    CHECK(r.streams == 4);
    CHECK(r.cycles == 1024);
    CHECK(r.elements_streamed == 4096);
    CHECK_FALSE(r.approximate);
    CHECK(cycle_report(4, 3, 50, c).approximate);
    CHECK(cycle_report(5, 3, 109, c).passes == 2);
    CHECK(cycle_report(5, 3, 108, c).passes == 1);
    CHECK(cycle_report(5, 3, 0, c).passes == 0);
}

TEST_CASE("run_chain agrees with the reference cost and gradient") {
    Rng rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + static_cast<int>(rng.index(3));
        const auto bc = fixtures::random_parameterized(n, 1 + rng.index(20), rng);
        const Unitary u = haar_random_unitary(n, rng.next());
        const auto ref = cost_and_gradient(u, bc.circuit, bc.params);
        const auto got = run_chain(u, bc.circuit, bc.params, DfeConfig{}, true);
        CHECK_FALSE(got.saturated);
        CHECK(std::abs(got.report.f - ref.report.f) < 1e-6);
        REQUIRE(got.gradient.size() == ref.gradient.size());
        for (std::size_t i = 0; i < got.gradient.size(); ++i) {
            CHECK(std::abs(got.gradient[i] - ref.gradient[i]) < 1e-6);
        }
    }
}

TEST_CASE("run_chain is independent of lanes and chain length") {
    Rng rng(45);
    const auto bc = fixtures::random_parameterized(4, 25, rng);
    const Unitary u = haar_random_unitary(4, 45);
    DfeConfig base;
    base.retain_streams = true;
    const auto ref = run_chain(u, bc.circuit, bc.params, base, true);
    for (std::size_t lanes : {1, 2, 3, 4, 7}) {
        for (std::size_t chain : {1, 5, 108}) {
            DfeConfig c = base;
            c.lanes = lanes;
            c.chain_length = chain;
            const auto r = run_chain(u, bc.circuit, bc.params, c, true);
            CHECK(r.traces == ref.traces);
            CHECK(r.streams == ref.streams);
        }
    }
}

TEST_CASE("run_chain cycle report equals the timing model") {
    Rng rng(46);
    DfeConfig c = no_overhead();
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng.index(3));
        const auto bc = fixtures::random_parameterized(n, 4 * (1 + rng.index(5)) - 1, rng);
        c.chain_length = 1 + rng.index(12);
        const auto r = run_chain(Unitary::identity(n), bc.circuit, bc.params, c, true);
        const double model = predict_time(n, bc.circuit.param_count(), bc.circuit.size(), c);
        CHECK(r.cycles.predicted_seconds == model);
        CHECK(static_cast<double>(r.cycles.cycles) / c.clock_hz == doctest::Approx(model).epsilon(1e-14));
    }
}

TEST_CASE("run_chain on an empty circuit reads the trace of U^dagger") {
    const Unitary u = haar_random_unitary(3, 47);
    const Circuit empty(3);
    const auto r = run_chain(u, empty, {}, DfeConfig{}, true);
    CHECK(r.cycles.passes == 0);
    CHECK(r.gradient.empty());
    Saturation sat;
    std::int64_t re = 0, im = 0;
    for (Eigen::Index i = 0; i < 8; ++i) {
        const auto z = fx_encode(std::conj(u.matrix()(i, i)), sat);
        re += z.re.raw;
        im += z.im.raw;
    }
    CHECK(r.traces[0].re == re);
    CHECK(r.traces[0].im == im);
}

TEST_CASE("dfe backend") {
    Rng rng(48);
    const auto bc = fixtures::random_parameterized(3, 10, rng);
    const Unitary u = haar_random_unitary(3, 48);
    auto dfe = make_backend(BackendKind::Dfe, u);
    auto ref = make_backend(BackendKind::Reference, u);
    const auto a = dfe->evaluate(bc.circuit, bc.params, true);
    const auto b = ref->evaluate(bc.circuit, bc.params, true);
    CHECK(a.cycles.has_value());
    CHECK_FALSE(b.cycles.has_value());
    CHECK(std::abs(a.report.f - b.report.f) < 1e-6);
    CHECK(parse_backend("dfe") == BackendKind::Dfe);
    CHECK_THROWS_AS(parse_backend("gpu"), InvalidParameter);
    DfeConfig bad;
    bad.lanes = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}
