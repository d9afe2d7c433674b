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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "seqpt/dense.hpp"
#include "seqpt/gf2.hpp"

namespace seqpt {

/// Tensor product of single-qubit Paulis with an exact phase i^phase.
///
/// The per-qubit factor for bits (x, z) is i^{x z} X^x Z^z, so (1, 1) is Y rather than XZ and every
/// phase-0 operator is Hermitian and squares to the identity. Off-diagonal chi entries are expressed
/// in this basis; other libraries using bare X^x Z^z differ by powers of i.
class PauliOperator {
   public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : x_(n), z_(n) {}
    PauliOperator(BitVector x, BitVector z, int phase = 0) : x_(std::move(x)), z_(std::move(z)), phase_(phase & 3) {
        x_.require_same_size(z_);
    }

    static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

    /// Parses "XIZY"-style labels, qubit 1 first. The result has phase 0.
    static PauliOperator from_label(std::string_view label) {
        if (label.empty()) {
            throw std::invalid_argument("empty Pauli label");
        }
        PauliOperator p(label.size());
        for (std::size_t i = 0; i < label.size(); ++i) {
            switch (label[i]) {
                case 'I':
                    break;
                case 'X':
                    p.x_.set(i, true);
                    break;
                case 'Z':
                    p.z_.set(i, true);
                    break;
                case 'Y':
                    p.x_.set(i, true);
                    p.z_.set(i, true);
                    break;
                default:
                    throw std::invalid_argument("invalid Pauli character '" + std::string(1, label[i]) +
                                                "' in label \"" + std::string(label) + "\"");
            }
        }
        return p;
    }

    /// Single-qubit Pauli `kind` ('X', 'Y' or 'Z') on qubit q of an n-qubit register.
    static PauliOperator single(std::size_t n, std::size_t q, char kind) {
        std::string label(n, 'I');
        label.at(q) = kind;
        return from_label(label);
    }

    /// The tensor-factor letters, ignoring the phase.
    std::string label() const {
        std::string out(size(), 'I');
        for (std::size_t i = 0; i < size(); ++i) {
            const bool xi = x_.get(i);
            const bool zi = z_.get(i);
            out[i] = xi ? (zi ? 'Y' : 'X') : (zi ? 'Z' : 'I');
        }
        return out;
    }

    /// Label with its phase prefix: "+", "-", "+i" or "-i".
    std::string to_string() const {
        static constexpr std::string_view kPrefix[] = {"+", "+i", "-", "-i"};
        return std::string(kPrefix[phase_]) + label();
    }

    std::size_t size() const { return x_.size(); }
    const BitVector& x() const { return x_; }
    const BitVector& z() const { return z_; }
    int phase() const { return phase_; }

    bool is_identity() const { return x_.none() && z_.none() && phase_ == 0; }
    bool is_identity_up_to_phase() const { return x_.none() && z_.none(); }

    /// Drops the phase, giving the Hermitian basis element with the same letters.
    PauliOperator canonical() const { return PauliOperator(x_, z_, 0); }

    /// Number of non-identity tensor factors.
    std::size_t weight() const { return static_cast<std::size_t>(std::popcount(x_.word() | z_.word())); }

    /// Qubit-level access, used by the gate conjugation rules.
    bool x_bit(std::size_t q) const { return x_.get(q); }
    bool z_bit(std::size_t q) const { return z_.get(q); }
    void set_x(std::size_t q, bool v) { x_.set(q, v); }
    void set_z(std::size_t q, bool v) { z_.set(q, v); }
    void add_phase(int k) { phase_ = (phase_ + k) & 3; }

    friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

   private:
    BitVector x_;
    BitVector z_;
    int phase_ = 0;
};

inline PauliOperator multiply(const PauliOperator& p, const PauliOperator& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("Pauli size mismatch: " + std::to_string(p.size()) + " vs " +
                                    std::to_string(q.size()));
    }
    const std::uint64_t x1 = p.x().word();
    const std::uint64_t z1 = p.z().word();
    const std::uint64_t x2 = q.x().word();
    const std::uint64_t z2 = q.z().word();
    const std::uint64_t x3 = x1 ^ x2;
    const std::uint64_t z3 = z1 ^ z2;
    // (i^{x1 z1} X^x1 Z^z1)(i^{x2 z2} X^x2 Z^z2) = i^{x1 z1 + x2 z2 + 2 z1 x2 - x3 z3} (i^{x3 z3} X^x3 Z^z3)
    const int phase = p.phase() + q.phase() + std::popcount(x1 & z1) + std::popcount(x2 & z2) +
                      2 * std::popcount(z1 & x2) - std::popcount(x3 & z3);
    return PauliOperator(BitVector(p.size(), x3), BitVector(p.size(), z3), ((phase % 4) + 4) % 4);
}

inline PauliOperator operator*(const PauliOperator& p, const PauliOperator& q) { return multiply(p, q); }

/// 0 iff p and q commute.
inline bool symplectic_product(const PauliOperator& p, const PauliOperator& q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("Pauli size mismatch: " + std::to_string(p.size()) + " vs " +
                                    std::to_string(q.size()));
    }
    return (std::popcount((p.x().word() & q.z().word()) ^ (p.z().word() & q.x().word())) & 1) != 0;
}

enum class GateKind { kH, kPhase, kPhaseDagger, kCnot, kX };

/// One gate of the Clifford subset used for basis changes. Qubits are zero-based.
///
/// kPhase is diag(1, i) (often called S); kPhaseDagger is its inverse.
struct GateAction {
    GateKind kind = GateKind::kH;
    std::size_t qubit = 0;   // target for single-qubit gates, control for CNOT
    std::size_t target = 0;  // CNOT target; unused otherwise

    static GateAction h(std::size_t q) { return {GateKind::kH, q, 0}; }
    static GateAction phase(std::size_t q) { return {GateKind::kPhase, q, 0}; }
    static GateAction phase_dagger(std::size_t q) { return {GateKind::kPhaseDagger, q, 0}; }
    static GateAction x(std::size_t q) { return {GateKind::kX, q, 0}; }
    static GateAction cnot(std::size_t control, std::size_t target) { return {GateKind::kCnot, control, target}; }

    GateAction inverse() const {
        switch (kind) {
            case GateKind::kPhase:
                return phase_dagger(qubit);
            case GateKind::kPhaseDagger:
                return phase(qubit);
            default:
                return *this;
        }
    }

    void validate(std::size_t n) const {
        if (qubit >= n || (kind == GateKind::kCnot && target >= n)) {
            throw std::out_of_range("gate acts outside a " + std::to_string(n) + "-qubit register");
        }
        if (kind == GateKind::kCnot && qubit == target) {
            throw std::invalid_argument("CNOT control and target coincide");
        }
    }

    friend bool operator==(const GateAction&, const GateAction&) = default;
};

/// Returns g·p·g†, i.e. the image of p when propagated forward through gate g.
///
/// Chaining over a circuit in application order yields U·p·U†.
inline PauliOperator conjugate_by_gate(PauliOperator p, const GateAction& g) {
    g.validate(p.size());
    const std::size_t q = g.qubit;
    const bool x = p.x_bit(q);
    const bool z = p.z_bit(q);
    switch (g.kind) {
        case GateKind::kH:
            // X <-> Z, Y -> -Y
            p.set_x(q, z);
            p.set_z(q, x);
            if (x && z) p.add_phase(2);
            break;
        case GateKind::kPhase:
            // X -> Y, Y -> -X
            p.set_z(q, z != x);
            if (x && z) p.add_phase(2);
            break;
        case GateKind::kPhaseDagger:
            // X -> -Y, Y -> X
            p.set_z(q, z != x);
            if (x && !z) p.add_phase(2);
            break;
        case GateKind::kX:
            if (z) p.add_phase(2);
            break;
        case GateKind::kCnot: {
            const std::size_t t = g.target;
            const bool xc = x;
            const bool zc = z;
            const bool xt = p.x_bit(t);
            const bool zt = p.z_bit(t);
            if (xc && zt && (xt == zc)) p.add_phase(2);
            p.set_x(t, xt != xc);
            p.set_z(q, zc != zt);
            break;
        }
    }
    return p;
}

/// Applies p to a dense state vector (qubit 1 is the most significant index bit).
inline CVector apply_pauli(const PauliOperator& p, const CVector& psi) {
    const std::size_t dim = dense_dim(p.size());
    if (static_cast<std::size_t>(psi.size()) != dim) {
        throw std::invalid_argument("state dimension does not match Pauli size");
    }
    const std::uint64_t xm = p.x().basis_index();
    const std::uint64_t zm = p.z().basis_index();
    const int base = p.phase() + std::popcount(p.x().word() & p.z().word());
    CVector out(dim);
    for (std::uint64_t j = 0; j < dim; ++j) {
        const int sign = (std::popcount(zm & j) & 1) ? 2 : 0;
        out[static_cast<Eigen::Index>(j ^ xm)] = i_pow(base + sign) * psi[static_cast<Eigen::Index>(j)];
    }
    return out;
}

/// Exact 2^n x 2^n matrix including the phase.
inline CMatrix dense_matrix(const PauliOperator& p) {
    const std::size_t dim = dense_dim(p.size());
    const std::uint64_t xm = p.x().basis_index();
    const std::uint64_t zm = p.z().basis_index();
    const int base = p.phase() + std::popcount(p.x().word() & p.z().word());
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t j = 0; j < dim; ++j) {
        const int sign = (std::popcount(zm & j) & 1) ? 2 : 0;
        m(static_cast<Eigen::Index>(j ^ xm), static_cast<Eigen::Index>(j)) = i_pow(base + sign);
    }
    return m;
}

/// The m-th Hermitian basis element among all 4^n, ordered by (x word, z word) packed as m = x * 2^n + z.
inline PauliOperator pauli_from_index(std::size_t n, std::uint64_t m) {
    const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
    return PauliOperator(BitVector(n, m >> n), BitVector(n, m & mask));
}

inline std::uint64_t pauli_index(const PauliOperator& p) { return (p.x().word() << p.size()) | p.z().word(); }

struct PauliKeyHash {
    std::size_t operator()(const PauliOperator& p) const {
        return std::hash<std::uint64_t>{}(p.x().word() * 0x9E3779B97F4A7C15ULL ^ p.z().word() ^ p.size());
    }
};

}  // namespace seqpt
