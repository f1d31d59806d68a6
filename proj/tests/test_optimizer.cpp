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

#include <algorithm>
#include <cmath>

#include "qsynth/compressor.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/optimizer.hpp"
#include "qsynth/toolkit.hpp"
#include "support/fixtures.hpp"

using namespace qsynth;
using fixtures::kPi;

namespace {

Unitary ry_target(double alpha) {
    Circuit c(1);
    c.ry(0);
    std::vector<double> p{alpha};
    return Unitary(circuit_matrix(c, p));
}

std::size_t count_changed(const std::vector<double> &a, const std::vector<double> &b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += a[i] != b[i] ? 1 : 0;
    }
    return n;
}

} // namespace

TEST_CASE("adam first step against the scalar formula") {
    OptimizerConfig c;
    for (double g : {0.3, -2.0, 1e-3, 7.5}) {
        std::vector<double> p{1.0};
        AdamState s(1);
        std::vector<double> grad{g};
        adam_step(p, grad, s, c);
        const double m = (1 - c.beta1) * g, v = (1 - c.beta2) * g * g;
        const double m_hat = m / (1 - c.beta1), v_hat = v / (1 - c.beta2);
        CHECK(p[0] == doctest::Approx(1.0 - c.learning_rate * m_hat / (std::sqrt(v_hat) + c.eps)).epsilon(1e-15));
        CHECK(std::abs((p[0] - 1.0) + c.learning_rate * (g > 0 ? 1 : -1)) < 1e-7 * c.learning_rate / std::abs(g) + 1e-15);
        CHECK(s.t == 1);
    }
}

TEST_CASE("adam with zero gradient keeps params and decays moments") {
    OptimizerConfig c;
    std::vector<double> p{0.5, -0.5};
    AdamState s(2);
    s.m = {0.2, -0.1};
    s.v = {0.04, 0.01};
    s.t = 3;
    std::vector<double> zero{0.0, 0.0};
    std::vector<double> before = p;
    AdamState fresh(2);
    adam_step(p, zero, fresh, c);
    CHECK(p == before);
    adam_step(p, zero, s, c);
    CHECK(s.m[0] == doctest::Approx(0.9 * 0.2));
    CHECK(s.v[1] == doctest::Approx(0.999 * 0.01));
}

TEST_CASE("adam constant gradient step approaches the learning rate") {
    OptimizerConfig c;
    std::vector<double> p{0.0, 0.0};
    AdamState s(2);
    std::vector<double> g{0.7, -3.0};
    std::vector<double> prev = p;
    for (int i = 0; i < 500; ++i) {
        prev = p;
        adam_step(p, g, s, c);
    }
    CHECK(prev[0] - p[0] == doctest::Approx(c.learning_rate).epsilon(1e-6));
    CHECK(p[1] - prev[1] == doctest::Approx(c.learning_rate).epsilon(1e-6));
}

TEST_CASE("plateau_escape counting and determinism") {
    OptimizerConfig c;
    std::vector<double> p(10, 1.0);
    Rng a(5), b(5);
    const auto s1 = plateau_escape(p, c, a);
    const auto s2 = plateau_escape(p, c, b);
    CHECK(s1 == s2);
    CHECK(count_changed(p, s1) == 3);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(std::abs(s1[i] - p[i]) <= c.shift_magnitude);
    }
    OptimizerConfig tiny = c;
    tiny.shift_fraction = 0.05;
    Rng r(6);
    CHECK(plateau_escape(p, tiny, r) == p);

    std::vector<bool> frozen(10, false);
    frozen[0] = frozen[1] = frozen[2] = frozen[3] = true;
    Rng f(7);
    const auto s3 = plateau_escape(p, c, f, frozen);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(s3[i] == p[i]);
    }
    CHECK(count_changed(p, s3) == 1); // floor(0.3 * 6)
}

TEST_CASE("optimize returns immediately at a solution") {
    const auto bc = build_ansatz({2, 2, {}});
    const Unitary u(circuit_matrix(bc));
    const auto r = optimize(u, bc.circuit, bc.params, OptimizerConfig{});
    CHECK(r.trace.iterations == 0);
    CHECK(r.report.f <= 1e-12);
    CHECK(r.params == bc.params);
}

TEST_CASE("optimize solves the one-qubit RY landscape") {
    Rng rng(51);
    for (int i = 0; i < 10; ++i) {
        const double alpha = rng.uniform(-kPi, kPi);
        Circuit c(1);
        c.ry(0);
        OptimizerConfig oc;
        oc.target_cost = 1e-10;
        oc.max_iters = 2000;
        oc.plateau_window = 2000;
        const auto r = optimize(ry_target(alpha), c, std::vector<double>{rng.uniform(-kPi, kPi)}, oc);
        CHECK(r.report.f < 1e-10);
        CHECK(r.trace.iterations <= 2000);
    }
}

TEST_CASE("optimize reaches tolerance on a 2-qubit Haar target with 6 layers") {
    const auto bc = build_ansatz({2, 6, {}});
    const Unitary u = haar_random_unitary(2, 52);
    OptimizerConfig oc;
    oc.rng_seed = 52;
    const auto r = optimize(u, bc.circuit, bc.params, oc);
    CHECK(r.report.f < 1e-4);
    CHECK(r.trace.final_cost == r.report.f);
    CHECK(cost(u, bc.circuit, r.params).f == r.report.f);
}

TEST_CASE("optimize escapes plateaus and keeps the best point") {
    Circuit c(2);
    c.u3(0);
    c.u3(1);
    OptimizerConfig oc;
    oc.max_iters = 1500;
    oc.plateau_window = 50;
    Circuit cx(2);
    cx.cx(0, 1);
    const Unitary u(circuit_matrix(cx, {}));
    const auto r = optimize(u, c, std::vector<double>(6, 0.1), oc);
    CHECK(r.trace.escapes > 0);
    CHECK(r.trace.escape_iterations.size() == r.trace.escapes);
    double best = 1e300;
    for (const auto &[it, f] : r.trace.cost_history) {
        best = std::min(best, f);
    }
    CHECK(r.report.f == best);
    CHECK(cost(u, c, r.params).f == r.report.f);
}

TEST_CASE("optimize honours frozen parameters") {
    auto bc = build_ansatz({2, 3, {}});
    Rng rng(53);
    for (auto &p : bc.params) {
        p = rng.uniform(-1, 1);
    }
    std::vector<bool> frozen(bc.params.size(), false);
    frozen[0] = frozen[6] = true;
    auto backend = make_backend(BackendKind::Reference, haar_random_unitary(2, 53));
    OptimizerConfig oc;
    oc.max_iters = 300;
    oc.plateau_window = 60;
    const auto r = optimize(*backend, bc.circuit, bc.params, oc, frozen);
    CHECK(r.params[0] == bc.params[0]);
    CHECK(r.params[6] == bc.params[6]);
    CHECK(r.params[1] != bc.params[1]);
}

TEST_CASE("optimize is deterministic for a fixed seed") {
    const auto bc = build_ansatz({2, 3, {}});
    const Unitary u = haar_random_unitary(2, 54);
    OptimizerConfig oc;
    oc.rng_seed = 9;
    oc.max_iters = 800;
    const auto a = optimize(u, bc.circuit, bc.params, oc);
    const auto b = optimize(u, bc.circuit, bc.params, oc);
    CHECK(a.params == b.params);
    CHECK(a.trace.cost_history == b.trace.cost_history);
}

TEST_CASE("expand_layers adds identity layers") {
    Rng rng(55);
    auto bc = build_ansatz({3, 4, {}});
    for (auto &p : bc.params) {
        p = rng.uniform(-kPi, kPi);
    }
    const Unitary u = haar_random_unitary(3, 55);
    const auto schedule = default_pair_schedule(3);
    const auto grown = expand_layers(bc, 2, schedule);
    CHECK(grown.params.size() == bc.params.size() + 2 * kParamsPerLayer);
    CHECK(std::abs(cost(u, grown.circuit, grown.params).f - cost(u, bc.circuit, bc.params).f) < 1e-12);
    for (std::size_t i = 0; i < bc.circuit.size(); ++i) {
        CHECK(grown.circuit.gate(i).kind == bc.circuit.gate(i).kind);
    }
    // Layers 5 and 6 use the next pairs of the schedule.
    const Gate &cry5 = grown.circuit.gate(bc.circuit.size() + 2);
    CHECK(cry5.kind == GateKind::CRY);
    CHECK(*cry5.control == schedule[4].first);
    CHECK(cry5.target == schedule[4].second);
    CHECK_THROWS_AS(expand_layers(bc, 0, schedule), InvalidParameter);
}

TEST_CASE("default pair schedule") {
    const std::vector<QubitPair> want{{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}};
    CHECK(default_pair_schedule(3) == want);
    CHECK(default_pair_schedule(2) == std::vector<QubitPair>{{0, 1}, {1, 0}});
}

TEST_CASE("optimizer config validation") {
    OptimizerConfig c;
    c.learning_rate = 0;
    CHECK_THROWS_AS(c.validate(), InvalidParameter);
    OptimizerConfig d;
    d.beta1 = 1.0;
    CHECK_THROWS_AS(d.validate(), InvalidParameter);
    OptimizerConfig e;
    e.shift_fraction = 1.5;
    CHECK_THROWS_AS(e.validate(), InvalidParameter);
}
