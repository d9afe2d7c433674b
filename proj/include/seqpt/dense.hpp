// Copyright 2026 The SEQPT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace seqpt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Register size above which dense 2^n x 2^n objects are refused.
inline constexpr std::size_t kMaxDenseQubits = 10;

inline std::size_t dense_dim(std::size_t n) {
    if (n > kMaxDenseQubits) {
        throw std::invalid_argument("dense representation requested for " + std::to_string(n) +
                                    " qubits; limit is " + std::to_string(kMaxDenseQubits));
    }
    return std::size_t{1} << n;
}

/// i^k for k taken mod 4.
inline Complex i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
    }
}

/// Squared modulus of <a|b> after removing any global phase; 1 means equal rays.
inline double ray_overlap(const CVector& a, const CVector& b) { return std::norm(a.dot(b)); }

}  // namespace seqpt
