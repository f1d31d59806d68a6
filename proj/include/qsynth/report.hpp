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

#include <json.hpp>

#include "qsynth/compressor.hpp"
#include "qsynth/dfe_emulator.hpp"
#include "qsynth/optimizer.hpp"
#include "qsynth/pipeline.hpp"
#include "qsynth/simulator.hpp"
#include "qsynth/toolkit.hpp"

namespace qsynth {

nlohmann::ordered_json to_json(const CostReport &r);
nlohmann::ordered_json to_json(const MetricsReport &m);
nlohmann::ordered_json to_json(const dfe::CycleReport &c);
/// Counters only; the per-iteration history is left out.
nlohmann::ordered_json trace_summary(const OptimizeTrace &t);
nlohmann::ordered_json compression_summary(const CompressionResult &r);
/// Metrics plus trace/compression summary and, for the dfe backend, the cycle report.
nlohmann::ordered_json decompose_report(const DecomposeResult &r, BackendKind backend);

} // namespace qsynth
