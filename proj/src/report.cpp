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
#include "qsynth/report.hpp"

namespace qsynth {

using nlohmann::ordered_json;

ordered_json to_json(const CostReport &r) {
    return ordered_json{{"f", r.f},         {"trace_re", r.trace_re}, {"trace_im", r.trace_im},
                        {"c_hst", r.c_hst}, {"f_avg", r.f_avg},       {"f_frob", r.f_frob}};
}

ordered_json to_json(const MetricsReport &m) {
    return ordered_json{{"cx_count", m.cx_count}, {"depth", m.depth},     {"f", m.f},
                        {"c_hst", m.c_hst},       {"f_avg", m.f_avg},     {"f_frob", m.f_frob},
                        {"n_qubits", m.n_qubits}, {"gate_total", m.gate_total}};
}

ordered_json to_json(const dfe::CycleReport &c) {
    return ordered_json{{"passes", c.passes},
                        {"streams", c.streams},
                        {"elements_streamed", c.elements_streamed},
                        {"cycles", c.cycles},
                        {"predicted_seconds", c.predicted_seconds},
                        {"approximate", c.approximate}};
}

ordered_json trace_summary(const OptimizeTrace &t) {
    return ordered_json{{"iterations", t.iterations},
                        {"escapes", t.escapes},
                        {"expansions", t.expansions},
                        {"final_cost", t.final_cost},
                        {"wall_seconds", t.wall_seconds}};
}

ordered_json compression_summary(const CompressionResult &r) {
    return ordered_json{{"initial_cry_count", r.initial_cry_count},
                        {"rounds_accepted", r.rounds_accepted},
                        {"cry_count_history", r.cry_count_history},
                        {"snapped", r.snapped},
                        {"pinned", r.pinned},
                        {"compressed_cost", r.report.f}};
}

ordered_json decompose_report(const DecomposeResult &r, BackendKind backend) {
    ordered_json j = to_json(r.metrics);
    j["backend"] = std::string(backend_name(backend));
    j["trace"] = trace_summary(r.compression.trace);
    j["compression"] = compression_summary(r.compression);
    if (r.cycles) {
        j["cycles"] = to_json(*r.cycles);
    }
    return j;
}

} // namespace qsynth
