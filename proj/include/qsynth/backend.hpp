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

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/dfe_emulator.hpp"
#include "qsynth/simulator.hpp"

namespace qsynth {

enum class BackendKind { Reference, Dfe };

BackendKind parse_backend(std::string_view name);
std::string_view backend_name(BackendKind kind);

struct Evaluation {
    CostReport report;
    std::vector<double> gradient; ///< empty unless requested
    std::optional<dfe::CycleReport> cycles;
    bool saturated = false;
};

/// Cost/gradient evaluator bound to one target unitary.
class CostBackend {
  public:
    virtual ~CostBackend() = default;

    virtual Evaluation evaluate(const Circuit &circuit, std::span<const double> params, bool want_gradient) = 0;
    [[nodiscard]] virtual BackendKind kind() const noexcept = 0;
    [[nodiscard]] virtual const Unitary &target() const noexcept = 0;
};

class ReferenceBackend final : public CostBackend {
  public:
    explicit ReferenceBackend(Unitary u) : u_(std::move(u)) {}

    Evaluation evaluate(const Circuit &circuit, std::span<const double> params, bool want_gradient) override;
    [[nodiscard]] BackendKind kind() const noexcept override { return BackendKind::Reference; }
    [[nodiscard]] const Unitary &target() const noexcept override { return u_; }

  private:
    Unitary u_;
};

class DfeBackend final : public CostBackend {
  public:
    DfeBackend(Unitary u, dfe::DfeConfig config) : u_(std::move(u)), config_(config) { config_.validate(); }

    Evaluation evaluate(const Circuit &circuit, std::span<const double> params, bool want_gradient) override;
    [[nodiscard]] BackendKind kind() const noexcept override { return BackendKind::Dfe; }
    [[nodiscard]] const Unitary &target() const noexcept override { return u_; }
    [[nodiscard]] const dfe::DfeConfig &config() const noexcept { return config_; }

  private:
    Unitary u_;
    dfe::DfeConfig config_;
};

std::unique_ptr<CostBackend> make_backend(BackendKind kind, const Unitary &u, const dfe::DfeConfig &config = {});

} // namespace qsynth
