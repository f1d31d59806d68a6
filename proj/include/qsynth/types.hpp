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

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qsynth {

using Complex = std::complex<double>;

/// Dense complex matrix, column-major (Eigen default).
using Matrix = Eigen::MatrixXcd;

inline constexpr std::size_t dim_of(int n_qubits) { return std::size_t{1} << n_qubits; }

/// Largest absolute elementwise difference.
inline double max_abs_diff(const Matrix &a, const Matrix &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qsynth
