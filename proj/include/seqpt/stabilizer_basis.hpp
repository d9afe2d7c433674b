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
#include <string_view>
#include <vector>

#include "seqpt/gf2.hpp"
#include "seqpt/pauli.hpp"

namespace seqpt {

/// One of the 2^n + 1 mutually unbiased bases: the computational basis, or the basis labelled by b.
class BasisId {
   public:
    BasisId() = default;

    static BasisId computational(std::size_t n) {
        BasisId id;
        id.computational_ = true;
        id.b_ = BitVector(n);
        return id;
    }
    static BasisId mub(BitVector b) {
        BasisId id;
        id.computational_ = false;
        id.b_ = std::move(b);
        return id;
    }

    /// "Z" for the computational basis, otherwise the bitstring of b. `n` is only needed for "Z".
    static BasisId parse(std::string_view text, std::size_t n) {
        if (text == "Z") {
            return computational(n);
        }
        BasisId id = mub(BitVector::from_string(text));
        if (id.size() != n) {
            throw std::invalid_argument("basis label \"" + std::string(text) + "\" has length " +
                                        std::to_string(id.size()) + ", expected " + std::to_string(n));
        }
        return id;
    }

    /// Enumeration order: 0 is the computational basis, 1 + index(b) otherwise.
    static BasisId from_ordinal(std::size_t n, std::uint64_t ordinal) {
        if (ordinal == 0) {
            return computational(n);
        }
        if (n < 64 && ordinal - 1 >= (std::uint64_t{1} << n)) {
            throw std::out_of_range("basis ordinal " + std::to_string(ordinal) + " out of range for " +
                                    std::to_string(n) + " qubits");
        }
        return mub(BitVector::from_basis_index(n, ordinal - 1));
    }
    std::uint64_t ordinal() const { return computational_ ? 0 : 1 + b_.basis_index(); }

    std::string label() const { return computational_ ? std::string("Z") : b_.to_string(); }

    bool is_computational() const { return computational_; }
    const BitVector& b() const { return b_; }
    std::size_t size() const { return b_.size(); }

    friend bool operator==(const BasisId&, const BasisId&) = default;

   private:
    bool computational_ = true;
    BitVector b_;
};

/// A design state: basis J and the index k of the state inside it.
struct StateIndex {
    BasisId basis;
    BitVector k;

    friend bool operator==(const StateIndex&, const StateIndex&) = default;
};

/// Canonical generators of the stabilizer group of `basis`.
///
/// For b, generator j has x-part e_1·M^j and z-part b·(M^T)^j, j = 0 .. n-1. For the computational basis
/// generator j is Z on qubit j + 1. Costs O(n^2) word operations.
inline std::vector<PauliOperator> canonical_generators(const BasisId& basis, const BitMatrix& field) {
    const std::size_t n = basis.size();
    std::vector<PauliOperator> gens;
    gens.reserve(n);
    if (basis.is_computational()) {
        for (std::size_t j = 0; j < n; ++j) gens.push_back(PauliOperator::single(n, j, 'Z'));
        return gens;
    }
    if (field.size() != n) {
        throw std::invalid_argument("field matrix size " + std::to_string(field.size()) +
                                    " does not match basis size " + std::to_string(n));
    }
    const BitMatrix field_t = field.transpose();
    BitVector x = BitVector::unit(n, 0);
    BitVector z = basis.b();
    for (std::size_t j = 0; j < n; ++j) {
        gens.emplace_back(x, z);
        x = mat_vec(x, field);
        z = mat_vec(z, field_t);
    }
    return gens;
}

/// Bit i is set iff E anticommutes with generator i.
inline BitVector commutation_vector(const PauliOperator& e, const std::vector<PauliOperator>& generators) {
    BitVector v(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != e.size()) {
            throw std::invalid_argument("commutation_vector: operator has " + std::to_string(e.size()) +
                                        " qubits, basis has " + std::to_string(generators[i].size()));
        }
        v.set(i, symplectic_product(generators[i], e));
    }
    return v;
}

inline BitVector commutation_vector(const PauliOperator& e, const BasisId& basis, const BitMatrix& field) {
    if (e.size() != basis.size()) {
        throw std::invalid_argument("commutation_vector: operator has " + std::to_string(e.size()) +
                                    " qubits, basis has " + std::to_string(basis.size()));
    }
    return commutation_vector(e, canonical_generators(basis, field));
}

/// The state E maps (basis, k) onto: same basis, k XOR commutation_vector(E).
inline StateIndex transition_target(const StateIndex& s, const PauliOperator& e, const BitMatrix& field) {
    return {s.basis, s.k ^ commutation_vector(e, s.basis, field)};
}

}  // namespace seqpt
