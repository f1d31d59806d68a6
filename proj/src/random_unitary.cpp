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
#include "qsynth/toolkit.hpp"

#include <cmath>

#include "qsynth/errors.hpp"
#include "qsynth/random.hpp"

namespace qsynth {

Unitary haar_random_unitary(int n_qubits, std::uint64_t seed) {
    if (n_qubits < 1 || n_qubits > 12) {
        throw InvalidParameter("haar_random_unitary: qubit count must be in [1, 12]");
    }
    const auto d = static_cast<Eigen::Index>(dim_of(n_qubits));
    Rng rng(seed);
    Matrix z(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
        for (Eigen::Index row = 0; row < d; ++row) {
            const double re = rng.normal();
            const double im = rng.normal();
            z(row, col) = Complex{re, im} * (std::numbers::sqrt2 / 2.0);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix &r = qr.matrixQR();
    // Fix the phase freedom of QR so that R has a positive real diagonal.
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        q.col(j) *= mag > 0.0 ? rjj / mag : Complex{1.0, 0.0};
    }
    return Unitary(std::move(q), 1e-12);
}

} // namespace qsynth
