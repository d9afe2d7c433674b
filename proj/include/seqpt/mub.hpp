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

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqpt/circuit.hpp"
#include "seqpt/dense.hpp"
#include "seqpt/gf2.hpp"
#include "seqpt/pauli.hpp"
#include "seqpt/stabilizer_basis.hpp"

namespace seqpt {

/// The complete set of 2^n + 1 stabilizer MUBs on n qubits, built from one primitive polynomial.
///
/// Immutable after construction; safe to share between threads.
class MubDesign {
   public:
    explicit MubDesign(std::size_t n) : MubDesign(n, field_matrix(n)) {}
    MubDesign(std::size_t n, BitMatrix field) : n_(n), field_(std::move(field)) {
        if (n == 0 || n > kMaxQubits) {
            throw std::invalid_argument("MubDesign: qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
        }
        if (field_.size() != n) {
            throw std::invalid_argument("MubDesign: field matrix does not match qubit count");
        }
        if (!validate_primitive(field_)) {
            throw std::invalid_argument("MubDesign: field matrix is not primitive");
        }
    }

    std::size_t qubits() const { return n_; }
    const BitMatrix& field() const { return field_; }

    /// D = 2^n.
    std::uint64_t dimension() const { return std::uint64_t{1} << n_; }
    /// D + 1.
    std::uint64_t basis_count() const { return dimension() + 1; }
    /// D (D + 1).
    std::uint64_t state_count() const { return dimension() * basis_count(); }

    BasisId basis(std::uint64_t ordinal) const { return BasisId::from_ordinal(n_, ordinal); }

    std::vector<PauliOperator> generators(const BasisId& basis) const {
        check(basis);
        return canonical_generators(basis, field_);
    }

    BitVector commutation_vector(const PauliOperator& e, const BasisId& basis) const {
        check(basis);
        return seqpt::commutation_vector(e, basis, field_);
    }

    StateIndex transition_target(const StateIndex& s, const PauliOperator& e) const {
        check(s.basis);
        return seqpt::transition_target(s, e, field_);
    }

    Circuit measurement_circuit(const BasisId& basis) const {
        check(basis);
        return seqpt::measurement_circuit(basis, field_);
    }

    Circuit preparation_circuit(const StateIndex& s) const {
        check(s.basis);
        return seqpt::preparation_circuit(s, field_);
    }

    /// All design states in (basis ordinal, k index) order.
    std::vector<StateIndex> all_states() const {
        const std::uint64_t d = dense_dim(n_);
        std::vector<StateIndex> out;
        out.reserve(state_count());
        for (std::uint64_t j = 0; j < basis_count(); ++j) {
            const BasisId id = basis(j);
            for (std::uint64_t k = 0; k < d; ++k) out.push_back({id, BitVector::from_basis_index(n_, k)});
        }
        return out;
    }

    /// |psi_k^J> = U_J† |k>, where U_J is the synthesized measurement circuit.
    CVector state_vector(const StateIndex& s) const {
        check(s.basis);
        return state_vector(s, measurement_circuit(s.basis));
    }

    /// Same as state_vector(s), reusing an already synthesized measurement circuit for s.basis.
    CVector state_vector(const StateIndex& s, const Circuit& measurement) const {
        const auto dim = static_cast<Eigen::Index>(dense_dim(n_));
        CVector psi = CVector::Zero(dim);
        psi[static_cast<Eigen::Index>(s.k.basis_index())] = 1.0;
        apply_circuit(psi, measurement.inverse());
        return psi;
    }

    /// Every design state vector, grouped by basis, each basis as a D x D matrix of columns.
    std::vector<CMatrix> basis_matrices() const {
        std::vector<CMatrix> out;
        out.reserve(basis_count());
        for (std::uint64_t j = 0; j < basis_count(); ++j) {
            // Columns of U† are U†|k>.
            out.push_back(circuit_unitary(measurement_circuit(basis(j))).adjoint());
        }
        return out;
    }

   private:
    void check(const BasisId& basis) const {
        if (basis.size() != n_) {
            throw std::invalid_argument("basis " + basis.label() + " does not belong to a " + std::to_string(n_) +
                                        "-qubit design");
        }
    }

    std::size_t n_;
    BitMatrix field_;
};

/// Largest register for which exact_design_average enumerates the design.
inline constexpr std::size_t kMaxDesignAverageQubits = 3;

/// Mean over all D(D+1) design states of <psi|A|psi><psi|B|psi>.
inline Complex exact_design_average(const MubDesign& design, const CMatrix& a, const CMatrix& b) {
    if (design.qubits() > kMaxDesignAverageQubits) {
        throw std::invalid_argument("exact_design_average supports at most " +
                                    std::to_string(kMaxDesignAverageQubits) + " qubits");
    }
    const auto dim = static_cast<Eigen::Index>(design.dimension());
    if (a.rows() != dim || a.cols() != dim || b.rows() != dim || b.cols() != dim) {
        throw std::invalid_argument("exact_design_average: operator dimension mismatch");
    }
    Complex sum = 0.0;
    for (const CMatrix& basis : design.basis_matrices()) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            const CVector psi = basis.col(k);
            sum += psi.dot(a * psi) * psi.dot(b * psi);
        }
    }
    return sum / static_cast<double>(design.state_count());
}

/// Haar value of the same quantity: (Tr A Tr B + Tr AB) / (D (D + 1)).
inline Complex haar_average(const CMatrix& a, const CMatrix& b) {
    const double d = static_cast<double>(a.rows());
    return (a.trace() * b.trace() + (a * b).trace()) / (d * (d + 1.0));
}

}  // namespace seqpt
