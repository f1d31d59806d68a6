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
// qsynth command-line front end.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "qsynth/backend.hpp"
#include "qsynth/dfe_emulator.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/pipeline.hpp"
#include "qsynth/report.hpp"
#include "qsynth/toolkit.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitIo = 3;

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw qsynth::FormatError(qsynth::FormatError::Kind::Io, "cannot open " + path + " for writing");
    }
    out << text;
    if (!out) {
        throw qsynth::FormatError(qsynth::FormatError::Kind::Io, "write failed: " + path);
    }
}

struct DfeFlags {
    std::size_t chain = 108;
    std::size_t lanes = 4;
    double clock = 3.5e8;
    double t0 = 1e-3;

    qsynth::dfe::DfeConfig config() const {
        qsynth::dfe::DfeConfig c;
        c.chain_length = chain;
        c.lanes = lanes;
        c.clock_hz = clock;
        c.overhead_seconds = t0;
        return c;
    }
};

void add_dfe_flags(CLI::App *cmd, DfeFlags &f) {
    cmd->add_option("--chain", f.chain, "gates per chained pass")->capture_default_str();
    cmd->add_option("--lanes", f.lanes, "parallel stream lanes")->capture_default_str();
    cmd->add_option("--clock", f.clock, "clock frequency in Hz")->capture_default_str();
    cmd->add_option("--t0", f.t0, "fixed per-call overhead in seconds")->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qsynth: variational unitary synthesis into {U3, CX} circuits"};
    app.require_subcommand(1);

    // decompose
    std::string unitary_path;
    std::string out_path;
    std::string report_path;
    std::string backend_str = "reference";
    qsynth::DecomposeOptions dopt;
    std::size_t max_iters = 0;
    DfeFlags dfe_flags;
    auto *decompose = app.add_subcommand("decompose", "synthesize a circuit for a UMAT unitary");
    decompose->add_option("--unitary", unitary_path, "input UMAT file")->required();
    decompose->add_option("--layers", dopt.layers, "initial ansatz layers (0: size default)")->capture_default_str();
    decompose->add_option("--tolerance", dopt.tolerance, "target cost f")->capture_default_str();
    decompose->add_option("--backend", backend_str, "reference or dfe")
        ->check(CLI::IsMember({"reference", "dfe"}))
        ->capture_default_str();
    decompose->add_option("--seed", dopt.seed, "RNG seed")->capture_default_str();
    decompose->add_option("--max-rounds", dopt.max_rounds, "compression rounds")->capture_default_str();
    decompose->add_option("--max-iters", max_iters, "optimizer iteration budget per run (0: default)");
    decompose->add_option("--candidates", dopt.compression.candidates_per_round, "CRYs tried per round")
        ->capture_default_str();
    decompose->add_option("--out", out_path, "output QASM file (default: stdout)");
    decompose->add_option("--report", report_path, "output JSON report");
    add_dfe_flags(decompose, dfe_flags);

    // cost
    std::string circuit_path;
    auto *cost_cmd = app.add_subcommand("cost", "evaluate the cost of a QASM circuit against a unitary");
    cost_cmd->add_option("--unitary", unitary_path, "input UMAT file")->required();
    cost_cmd->add_option("--circuit", circuit_path, "input QASM file")->required();
    cost_cmd->add_option("--backend", backend_str, "reference or dfe")
        ->check(CLI::IsMember({"reference", "dfe"}))
        ->capture_default_str();
    add_dfe_flags(cost_cmd, dfe_flags);

    // metrics
    auto *metrics_cmd = app.add_subcommand("metrics", "CX count and depth of a QASM circuit");
    metrics_cmd->add_option("--circuit", circuit_path, "input QASM file")->required();

    // random-unitary
    int n_qubits = 0;
    std::uint64_t seed = 0;
    auto *random_cmd = app.add_subcommand("random-unitary", "write a Haar-random unitary");
    random_cmd->add_option("-n", n_qubits, "qubits")->required()->check(CLI::Range(1, 12));
    random_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
    random_cmd->add_option("-o", out_path, "output UMAT file")->required();

    // predict-time
    std::size_t n_params = 0;
    std::size_t n_gates = 0;
    auto *predict_cmd = app.add_subcommand("predict-time", "emulator wall-time model for one evaluation");
    predict_cmd->add_option("-n", n_qubits, "qubits")->required()->check(CLI::Range(1, 16));
    predict_cmd->add_option("--params", n_params, "gradient components")->required();
    predict_cmd->add_option("--gates", n_gates, "gates in the circuit")->required();
    add_dfe_flags(predict_cmd, dfe_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*decompose) {
            dopt.backend = qsynth::parse_backend(backend_str);
            dopt.dfe = dfe_flags.config();
            if (max_iters > 0) {
                dopt.max_iters = max_iters;
            }
            const auto u = qsynth::read_unitary(unitary_path);
            const auto result = qsynth::decompose(u, dopt);
            const std::string qasm = qsynth::export_qasm(result.circuit);
            if (out_path.empty()) {
                std::cout << qasm;
            } else {
                write_text(out_path, qasm);
            }
            if (!report_path.empty()) {
                write_text(report_path, qsynth::decompose_report(result, dopt.backend).dump(2) + "\n");
            }
            std::fprintf(stderr, "f = %.6e, cx = %zu, depth = %zu\n", result.report.f, result.metrics.cx_count,
                         result.metrics.depth);
        } else if (*cost_cmd) {
            const auto u = qsynth::read_unitary(unitary_path);
            const auto bound = qsynth::import_qasm(circuit_path);
            auto backend = qsynth::make_backend(qsynth::parse_backend(backend_str), u, dfe_flags.config());
            const auto eval = backend->evaluate(bound.circuit, bound.params, false);
            std::cout << qsynth::to_json(eval.report).dump() << "\n";
        } else if (*metrics_cmd) {
            const auto bound = qsynth::import_qasm(circuit_path);
            nlohmann::ordered_json j{{"cx_count", bound.circuit.count(qsynth::GateKind::CX)},
                                     {"depth", qsynth::depth(bound.circuit)}};
            std::cout << j.dump() << "\n";
        } else if (*random_cmd) {
            qsynth::write_unitary(qsynth::haar_random_unitary(n_qubits, seed), out_path);
        } else if (*predict_cmd) {
            const double t = qsynth::dfe::predict_time(n_qubits, n_params, n_gates, dfe_flags.config());
            std::printf("%.3e s\n", t);
        }
    } catch (const qsynth::FailedToConverge &e) {
        std::fprintf(stderr, "qsynth: %s\n", e.what());
        return kExitNoConvergence;
    } catch (const qsynth::FormatError &e) {
        std::fprintf(stderr, "qsynth: %s\n", e.what());
        return kExitIo;
    } catch (const qsynth::Error &e) {
        std::fprintf(stderr, "qsynth: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "qsynth: %s\n", e.what());
        return kExitIo;
    }
    return kExitOk;
}
