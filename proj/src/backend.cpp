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
#include "qsynth/backend.hpp"

#include <string>

#include "qsynth/errors.hpp"

namespace qsynth {

BackendKind parse_backend(std::string_view name) {
    if (name == "reference") {
        return BackendKind::Reference;
    }
    if (name == "dfe") {
        return BackendKind::Dfe;
    }
    throw InvalidParameter("unknown backend '" + std::string(name) + "' (expected reference or dfe)");
}

std::string_view backend_name(BackendKind kind) { return kind == BackendKind::Dfe ? "dfe" : "reference"; }

Evaluation ReferenceBackend::evaluate(const Circuit &circuit, std::span<const double> params, bool want_gradient) {
    if (!want_gradient) {
        return {cost(u_, circuit, params), {}, std::nullopt, false};
    }
    auto [report, grad] = cost_and_gradient(u_, circuit, params);
    return {report, std::move(grad), std::nullopt, false};
}

Evaluation DfeBackend::evaluate(const Circuit &circuit, std::span<const double> params, bool want_gradient) {
    auto r = dfe::run_chain(u_, circuit, params, config_, want_gradient);
    return {r.report, std::move(r.gradient), r.cycles, r.saturated};
}

std::unique_ptr<CostBackend> make_backend(BackendKind kind, const Unitary &u, const dfe::DfeConfig &config) {
    if (kind == BackendKind::Dfe) {
        return std::make_unique<DfeBackend>(u, config);
    }
    return std::make_unique<ReferenceBackend>(u);
}

} // namespace qsynth
