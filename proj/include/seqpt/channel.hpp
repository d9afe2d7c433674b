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

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Eigenvalues>

#include "seqpt/dense.hpp"
#include "seqpt/pauli.hpp"

namespace seqpt {

/// Raised for malformed channel descriptions; the message names the offending field.
struct ChannelError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kPauliSumTolerance = 1e-12;
inline constexpr double kKrausTolerance = 1e-10;
inline constexpr double kChiHermitianTolerance = 1e-10;
inline constexpr double kChiPsdTolerance = 1e-9;
inline constexpr double kChiTraceTolerance = 1e-9;

/// Largest register for which chi matrices (D^2 x D^2) are materialized.
inline constexpr std::size_t kMaxChiQubits = 3;

/// rho -> sum_P p_P P rho P.
struct PauliTerms {
    std::vector<std::pair<PauliOperator, double>> terms;
};

/// rho -> sum_k A_k rho A_k†.
struct KrausOperators {
    std::vector<CMatrix> ops;
};

/// rho -> sum_{m,m'} chi(m, m') E_m rho E_m'†, rows and columns ordered by pauli_index.
struct ChiMatrix {
    CMatrix chi;
};

/// A CPTP map on n qubits in one of three representations. Validated at construction.
class QuantumChannel {
   public:
    using Representation = std::variant<PauliTerms, KrausOperators, ChiMatrix>;

    static QuantumChannel identity(std::size_t n) { return pauli(n, {{std::string(n, 'I'), 1.0}}); }

    /// Pauli channel from label -> probability.
    static QuantumChannel pauli(std::size_t n, const std::map<std::string, double>& probs) {
        PauliTerms rep;
        double total = 0.0;
        for (const auto& [label, p] : probs) {
            PauliOperator op;
            try {
                op = PauliOperator::from_label(label);
            } catch (const std::invalid_argument& e) {
                throw ChannelError("probs." + label + ": " + e.what());
            }
            if (op.size() != n) {
                throw ChannelError("probs." + label + ": label length " + std::to_string(op.size()) +
                                   " does not match n = " + std::to_string(n));
            }
            if (!(p >= 0.0) || !std::isfinite(p)) {
                throw ChannelError("probs." + label + ": probability must be a finite value >= 0");
            }
            total += p;
            if (p > 0.0) rep.terms.emplace_back(op, p);
        }
        if (std::abs(total - 1.0) > kPauliSumTolerance) {
            throw ChannelError("probs: probabilities sum to " + std::to_string(total) + ", expected 1");
        }
        return QuantumChannel(n, std::move(rep));
    }

    static QuantumChannel kraus(std::size_t n, std::vector<CMatrix> ops) {
        const auto dim = static_cast<Eigen::Index>(dense_dim(n));
        if (ops.empty()) {
            throw ChannelError("matrices: at least one Kraus operator is required");
        }
        CMatrix sum = CMatrix::Zero(dim, dim);
        for (std::size_t i = 0; i < ops.size(); ++i) {
            if (ops[i].rows() != dim || ops[i].cols() != dim) {
                throw ChannelError("matrices[" + std::to_string(i) + "]: expected " + std::to_string(dim) + "x" +
                                   std::to_string(dim));
            }
            sum += ops[i].adjoint() * ops[i];
        }
        const double err = (sum - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
        if (err > kKrausTolerance) {
            throw ChannelError("matrices: sum of A^dagger A deviates from identity by " + std::to_string(err));
        }
        return QuantumChannel(n, KrausOperators{std::move(ops)});
    }

    static QuantumChannel unitary(std::size_t n, CMatrix u) {
        std::vector<CMatrix> ops;
        ops.push_back(std::move(u));
        try {
            return kraus(n, std::move(ops));
        } catch (const ChannelError& e) {
            const std::string what = e.what();
            throw ChannelError("matrix: not unitary (" + what.substr(what.find(':') + 2) + ")");
        }
    }

    static QuantumChannel chi(std::size_t n, CMatrix chi) {
        if (n > kMaxChiQubits) {
            throw ChannelError("chi: chi-matrix channels are limited to " + std::to_string(kMaxChiQubits) +
                               " qubits");
        }
        const auto d2 = static_cast<Eigen::Index>(std::size_t{1} << (2 * n));
        if (chi.rows() != d2 || chi.cols() != d2) {
            throw ChannelError("chi: expected a " + std::to_string(d2) + "x" + std::to_string(d2) + " matrix");
        }
        if ((chi - chi.adjoint()).cwiseAbs().maxCoeff() > kChiHermitianTolerance) {
            throw ChannelError("chi: matrix is not Hermitian");
        }
        const CMatrix herm = 0.5 * (chi + chi.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
        if (solver.eigenvalues().minCoeff() < -kChiPsdTolerance) {
            throw ChannelError("chi: matrix is not positive semidefinite");
        }
        if (std::abs(herm.trace().real() - 1.0) > kChiTraceTolerance) {
            throw ChannelError("chi: diagonal sums to " + std::to_string(herm.trace().real()) + ", expected 1");
        }
        // Full trace preservation: sum chi(m, m') E_m'† E_m = I.
        const auto dim = static_cast<Eigen::Index>(dense_dim(n));
        CMatrix tp = CMatrix::Zero(dim, dim);
        for (Eigen::Index a = 0; a < d2; ++a) {
            const CMatrix ea = dense_matrix(pauli_from_index(n, static_cast<std::uint64_t>(a)));
            for (Eigen::Index b = 0; b < d2; ++b) {
                if (herm(a, b) == Complex(0.0)) continue;
                tp += herm(a, b) * dense_matrix(pauli_from_index(n, static_cast<std::uint64_t>(b))).adjoint() * ea;
            }
        }
        if ((tp - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > kChiTraceTolerance) {
            throw ChannelError("chi: channel is not trace preserving");
        }
        return QuantumChannel(n, ChiMatrix{herm});
    }

    std::size_t qubits() const { return n_; }
    const Representation& representation() const { return rep_; }

    bool is_pauli() const { return std::holds_alternative<PauliTerms>(rep_); }
    const PauliTerms& pauli_terms() const { return std::get<PauliTerms>(rep_); }

    /// A Kraus decomposition of the same map. Chi matrices are diagonalized.
    std::vector<CMatrix> kraus_operators() const {
        if (const auto* p = std::get_if<PauliTerms>(&rep_)) {
            std::vector<CMatrix> ops;
            for (const auto& [op, prob] : p->terms) ops.push_back(std::sqrt(prob) * dense_matrix(op));
            return ops;
        }
        if (const auto* k = std::get_if<KrausOperators>(&rep_)) {
            return k->ops;
        }
        const CMatrix& chi = std::get<ChiMatrix>(rep_).chi;
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(chi);
        const auto dim = static_cast<Eigen::Index>(dense_dim(n_));
        std::vector<CMatrix> ops;
        for (Eigen::Index e = 0; e < chi.rows(); ++e) {
            const double lambda = solver.eigenvalues()[e];
            if (lambda <= 1e-14) continue;
            CMatrix a = CMatrix::Zero(dim, dim);
            for (Eigen::Index m = 0; m < chi.rows(); ++m) {
                const Complex c = solver.eigenvectors()(m, e);
                if (c == Complex(0.0)) continue;
                a += c * dense_matrix(pauli_from_index(n_, static_cast<std::uint64_t>(m)));
            }
            ops.push_back(std::sqrt(lambda) * a);
        }
        return ops;
    }

   private:
    QuantumChannel(std::size_t n, Representation rep) : n_(n), rep_(std::move(rep)) {}

    std::size_t n_ = 0;
    Representation rep_;
};

/// Ground-truth chi matrix in the Hermitian Pauli basis, ordered by pauli_index.
///
/// For Kraus input: a_k(m) = Tr(E_m† A_k) / D and chi(m, m') = sum_k a_k(m) conj(a_k(m')).
inline CMatrix chi_from_kraus(const QuantumChannel& ch) {
    const std::size_t n = ch.qubits();
    if (n > kMaxChiQubits) {
        throw std::invalid_argument("chi_from_kraus supports at most " + std::to_string(kMaxChiQubits) + " qubits");
    }
    const auto d2 = static_cast<Eigen::Index>(std::size_t{1} << (2 * n));
    const double d = static_cast<double>(std::size_t{1} << n);
    if (const auto* p = std::get_if<PauliTerms>(&ch.representation())) {
        CMatrix chi = CMatrix::Zero(d2, d2);
        for (const auto& [op, prob] : p->terms) {
            const auto m = static_cast<Eigen::Index>(pauli_index(op));
            chi(m, m) += prob;
        }
        return chi;
    }
    if (const auto* c = std::get_if<ChiMatrix>(&ch.representation())) {
        return c->chi;
    }
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d2));
    for (Eigen::Index m = 0; m < d2; ++m) basis.push_back(dense_matrix(pauli_from_index(n, static_cast<std::uint64_t>(m))));
    CMatrix chi = CMatrix::Zero(d2, d2);
    for (const CMatrix& a : std::get<KrausOperators>(ch.representation()).ops) {
        CVector coeff(d2);
        for (Eigen::Index m = 0; m < d2; ++m) coeff[m] = (basis[static_cast<std::size_t>(m)].adjoint() * a).trace() / d;
        chi += coeff * coeff.adjoint();
    }
    return chi;
}

/// Chi entry for a pair of Hermitian basis elements (phases ignored).
inline Complex chi_entry(const CMatrix& chi, const PauliOperator& m, const PauliOperator& m_prime) {
    return chi(static_cast<Eigen::Index>(pauli_index(m)), static_cast<Eigen::Index>(pauli_index(m_prime)));
}

/// Applies the channel to a density matrix.
inline CMatrix apply_channel(const CMatrix& rho, const QuantumChannel& ch) {
    const auto dim = static_cast<Eigen::Index>(dense_dim(ch.qubits()));
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("apply_channel: density matrix is " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + ", channel acts on dimension " +
                                    std::to_string(dim));
    }
    CMatrix out = CMatrix::Zero(dim, dim);
    if (const auto* p = std::get_if<PauliTerms>(&ch.representation())) {
        for (const auto& [op, prob] : p->terms) {
            // P rho P† column by column, then row by row, without forming P densely.
            CMatrix tmp(dim, dim);
            for (Eigen::Index c = 0; c < dim; ++c) tmp.col(c) = apply_pauli(op, rho.col(c));
            CMatrix both(dim, dim);
            for (Eigen::Index r = 0; r < dim; ++r) {
                both.row(r) = apply_pauli(op, tmp.row(r).adjoint()).adjoint();
            }
            out += prob * both;
        }
        return out;
    }
    if (const auto* k = std::get_if<KrausOperators>(&ch.representation())) {
        for (const CMatrix& a : k->ops) out += a * rho * a.adjoint();
        return out;
    }
    const CMatrix& chi = std::get<ChiMatrix>(ch.representation()).chi;
    const std::size_t n = ch.qubits();
    std::vector<CMatrix> left;
    std::vector<CMatrix> right;
    for (Eigen::Index m = 0; m < chi.rows(); ++m) {
        const CMatrix e = dense_matrix(pauli_from_index(n, static_cast<std::uint64_t>(m)));
        left.push_back(e * rho);
        right.push_back(e.adjoint());
    }
    for (Eigen::Index a = 0; a < chi.rows(); ++a) {
        for (Eigen::Index b = 0; b < chi.cols(); ++b) {
            if (chi(a, b) == Complex(0.0)) continue;
            out += chi(a, b) * left[static_cast<std::size_t>(a)] * right[static_cast<std::size_t>(b)];
        }
    }
    return out;
}

}  // namespace seqpt
