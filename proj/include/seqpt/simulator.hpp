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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqpt/channel.hpp"
#include "seqpt/circuit.hpp"
#include "seqpt/dense.hpp"
#include "seqpt/mub.hpp"
#include "seqpt/pauli.hpp"
#include "seqpt/rng.hpp"
#include "seqpt/stabilizer_basis.hpp"

namespace seqpt {

/// One tomography shot: prepared basis J, prepared index k_in, observed index k_out.
struct ExperimentRecord {
    BasisId basis;
    BitVector k_in;
    BitVector k_out;

    /// k_out XOR k_in.
    BitVector shift() const { return k_out ^ k_in; }

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct ShotOutcome {
    ExperimentRecord record;
    /// Ancilla eigenvalue (+1 / -1); present only for ancilla-assisted runs.
    std::optional<int> ancilla;
};

enum class AncillaAxis { kX, kY };

/// Sparse distribution over output indices, entries sorted by basis index of k.
using TransitionDistribution = std::vector<std::pair<BitVector, double>>;

/// Joint distribution of the ancilla eigenvalue and the main-register index.
struct JointOutcome {
    int ancilla;
    BitVector k_out;
    double probability;
};
using JointDistribution = std::vector<JointOutcome>;

/// How Pauli channels are simulated. kExact computes the outcome distribution of each shot;
/// kTrajectory draws one Pauli error per shot. Other representations always use kExact.
enum class SimulationMode { kExact, kTrajectory };

/// Stand-in for the experimental apparatus: prepares design states, applies the channel once per shot,
/// measures in the preparation basis and samples the outcome.
///
/// Thread-safe; distributions of small registers are memoized behind a mutex.
class ChannelSimulator {
   public:
    ChannelSimulator(const MubDesign& design, QuantumChannel channel, SimulationMode mode = SimulationMode::kExact)
        : design_(&design), channel_(std::move(channel)), mode_(mode) {
        if (channel_.qubits() != design.qubits()) {
            throw std::invalid_argument("channel acts on " + std::to_string(channel_.qubits()) +
                                        " qubits but the design has " + std::to_string(design.qubits()));
        }
        if (channel_.is_pauli()) {
            double acc = 0.0;
            for (const auto& [op, p] : channel_.pauli_terms().terms) {
                acc += p;
                pauli_cdf_.push_back(acc);
            }
        } else {
            kraus_ = channel_.kraus_operators();
        }
    }

    const MubDesign& design() const { return *design_; }
    const QuantumChannel& channel() const { return channel_; }
    std::size_t qubits() const { return design_->qubits(); }

    /// Tr(E(Pi_{J,k}) Pi_{J,k'}) for every k' with non-zero probability.
    TransitionDistribution exact_transition_probs(const StateIndex& s) const {
        check(s);
        if (channel_.is_pauli()) {
            return pauli_transitions(s);
        }
        const bool cache = qubits() <= kMemoQubits;
        const std::uint64_t key = state_key(s);
        if (cache) {
            std::lock_guard<std::mutex> lock(mutex_);
            if (auto it = transition_cache_.find(key); it != transition_cache_.end()) return it->second;
        }
        TransitionDistribution dist = dense_transitions(s);
        if (cache) {
            std::lock_guard<std::mutex> lock(mutex_);
            transition_cache_.emplace(key, dist);
        }
        return dist;
    }

    /// Prepares s, applies the channel, measures in s.basis.
    ShotOutcome run_transition_experiment(const StateIndex& s, Rng& rng) const {
        check(s);
        if (channel_.is_pauli() && mode_ == SimulationMode::kTrajectory) {
            const PauliOperator& err = sample_pauli(rng);
            return {{s.basis, s.k, s.k ^ design_->commutation_vector(err, s.basis)}, std::nullopt};
        }
        const TransitionDistribution dist = exact_transition_probs(s);
        return {{s.basis, s.k, sample(dist, rng)}, std::nullopt};
    }

    /// Joint distribution for the ancilla-assisted circuit: H on the ancilla, controlled-E_m† (ancilla 1),
    /// anti-controlled-E_m'† (ancilla 0), channel on the main register, then ancilla measured along
    /// `axis` and the main register in s.basis.
    JointDistribution exact_offdiag_distribution(const StateIndex& s, const PauliOperator& m,
                                                 const PauliOperator& m_prime, AncillaAxis axis) const {
        check(s);
        if (m.size() != qubits() || m_prime.size() != qubits()) {
            throw std::invalid_argument("off-diagonal targets must act on " + std::to_string(qubits()) + " qubits");
        }
        const Circuit meas = design_->measurement_circuit(s.basis);
        const CVector psi = design_->state_vector(s, meas);
        // branch 1 carries E_m† psi, branch 0 carries E_m'† psi
        const std::array<CVector, 2> branch = {apply_pauli(adjoint(m_prime), psi), apply_pauli(adjoint(m), psi)};
        const auto dim = static_cast<Eigen::Index>(design_->dimension());
        // g[a][b](k') = sum_A (U A branch_a)[k'] conj((U A branch_b)[k'])
        std::array<std::array<CVector, 2>, 2> g;
        for (auto& row : g)
            for (auto& v : row) v = CVector::Zero(dim);
        for (const CMatrix& a : kraus_list()) {
            std::array<CVector, 2> out;
            for (int br = 0; br < 2; ++br) {
                out[br] = a * branch[br];
                apply_circuit(out[br], meas);
            }
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y) g[x][y] += out[x].cwiseProduct(out[y].conjugate());
        }
        JointDistribution dist;
        for (int sign : {+1, -1}) {
            // <b|Pi_s|a> for the ancilla projector onto eigenvalue `sign`.
            const Complex off10 = axis == AncillaAxis::kX ? Complex(0.5 * sign, 0.0) : Complex(0.0, 0.5 * sign);
            const Complex off01 = std::conj(off10);
            for (Eigen::Index k = 0; k < dim; ++k) {
                const Complex p = 0.5 * (0.5 * g[0][0][k] + 0.5 * g[1][1][k] + off10 * g[0][1][k] + off01 * g[1][0][k]);
                const double prob = std::max(0.0, p.real());
                if (prob > 0.0) dist.push_back({sign, BitVector::from_basis_index(qubits(), static_cast<std::uint64_t>(k)), prob});
            }
        }
        return dist;
    }

    ShotOutcome run_offdiag_experiment(const StateIndex& s, const PauliOperator& m, const PauliOperator& m_prime,
                                       AncillaAxis axis, Rng& rng) const {
        const JointDistribution dist = cached_offdiag(s, m, m_prime, axis);
        double total = 0.0;
        for (const auto& o : dist) total += o.probability;
        const double u = rng.uniform() * total;
        double acc = 0.0;
        for (const auto& o : dist) {
            acc += o.probability;
            if (u < acc) return {{s.basis, s.k, o.k_out}, o.ancilla};
        }
        return {{s.basis, s.k, dist.back().k_out}, dist.back().ancilla};
    }

   private:
    static constexpr std::size_t kMemoQubits = 4;

    static PauliOperator adjoint(const PauliOperator& p) { return PauliOperator(p.x(), p.z(), (4 - p.phase()) & 3); }

    void check(const StateIndex& s) const {
        if (s.basis.size() != qubits() || s.k.size() != qubits()) {
            throw std::invalid_argument("state index does not match a " + std::to_string(qubits()) +
                                        "-qubit register");
        }
    }

    std::uint64_t state_key(const StateIndex& s) const {
        return s.basis.ordinal() * design_->dimension() + s.k.basis_index();
    }

    const std::vector<CMatrix>& kraus_list() const {
        if (channel_.is_pauli()) {
            std::call_once(pauli_kraus_once_, [this] { pauli_kraus_ = channel_.kraus_operators(); });
            return pauli_kraus_;
        }
        return kraus_;
    }

    TransitionDistribution pauli_transitions(const StateIndex& s) const {
        const auto gens = design_->generators(s.basis);
        std::map<BitVector, double> acc;
        for (const auto& [op, p] : channel_.pauli_terms().terms) {
            acc[s.k ^ commutation_vector(op, gens)] += p;
        }
        return sorted(acc);
    }

    TransitionDistribution dense_transitions(const StateIndex& s) const {
        const Circuit meas = design_->measurement_circuit(s.basis);
        const CVector psi = design_->state_vector(s, meas);
        Eigen::VectorXd probs = Eigen::VectorXd::Zero(psi.size());
        for (const CMatrix& a : kraus_) {
            CVector phi = a * psi;
            apply_circuit(phi, meas);
            probs += phi.cwiseAbs2();
        }
        TransitionDistribution dist;
        for (Eigen::Index k = 0; k < probs.size(); ++k) {
            if (probs[k] > 0.0) dist.emplace_back(BitVector::from_basis_index(qubits(), static_cast<std::uint64_t>(k)), probs[k]);
        }
        return dist;
    }

    TransitionDistribution sorted(const std::map<BitVector, double>& acc) const {
        TransitionDistribution dist(acc.begin(), acc.end());
        std::sort(dist.begin(), dist.end(),
                  [](const auto& a, const auto& b) { return a.first.basis_index() < b.first.basis_index(); });
        return dist;
    }

    const PauliOperator& sample_pauli(Rng& rng) const {
        const auto& terms = channel_.pauli_terms().terms;
        const double u = rng.uniform() * pauli_cdf_.back();
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (u < pauli_cdf_[i]) return terms[i].first;
        }
        return terms.back().first;
    }

    static BitVector sample(const TransitionDistribution& dist, Rng& rng) {
        double total = 0.0;
        for (const auto& [k, p] : dist) total += p;
        const double u = rng.uniform() * total;
        double acc = 0.0;
        for (const auto& [k, p] : dist) {
            acc += p;
            if (u < acc) return k;
        }
        return dist.back().first;
    }

    JointDistribution cached_offdiag(const StateIndex& s, const PauliOperator& m, const PauliOperator& m_prime,
                                     AncillaAxis axis) const {
        check(s);
        if (qubits() > kMemoQubits) return exact_offdiag_distribution(s, m, m_prime, axis);
        const OffdiagKey key{state_key(s), pauli_index(m), pauli_index(m_prime), m.phase() * 4 + m_prime.phase(),
                             axis == AncillaAxis::kX ? 0 : 1};
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (auto it = offdiag_cache_.find(key); it != offdiag_cache_.end()) return it->second;
        }
        JointDistribution dist = exact_offdiag_distribution(s, m, m_prime, axis);
        std::lock_guard<std::mutex> lock(mutex_);
        offdiag_cache_.emplace(key, dist);
        return dist;
    }

    using OffdiagKey = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, int, int>;

    const MubDesign* design_;
    QuantumChannel channel_;
    SimulationMode mode_;
    std::vector<double> pauli_cdf_;
    std::vector<CMatrix> kraus_;
    mutable std::once_flag pauli_kraus_once_;
    mutable std::vector<CMatrix> pauli_kraus_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::uint64_t, TransitionDistribution> transition_cache_;
    mutable std::map<OffdiagKey, JointDistribution> offdiag_cache_;
};

// ---------------------------------------------------------------------------------------------------------
// Exact design averages used as ground truth.

/// Mean over all design states of Tr(E_m† E(Pi) E_m Pi), by dense density-matrix evaluation.
inline double exact_survival_fidelity(const MubDesign& design, const QuantumChannel& ch, const PauliOperator& m) {
    if (design.qubits() > kMaxDesignAverageQubits) {
        throw std::invalid_argument("exact_survival_fidelity supports at most " +
                                    std::to_string(kMaxDesignAverageQubits) + " qubits");
    }
    const CMatrix em = dense_matrix(m);
    double sum = 0.0;
    for (const CMatrix& basis : design.basis_matrices()) {
        for (Eigen::Index k = 0; k < basis.cols(); ++k) {
            const CVector psi = basis.col(k);
            const CMatrix out = apply_channel(psi * psi.adjoint(), ch);
            sum += psi.dot(em.adjoint() * out * em * psi).real();
        }
    }
    return sum / static_cast<double>(design.state_count());
}

/// Mean over all design states of the joint expectation <ancilla * [k_out == k_in]>.
inline double exact_offdiag_expectation(const ChannelSimulator& sim, const PauliOperator& m,
                                        const PauliOperator& m_prime, AncillaAxis axis) {
    const MubDesign& design = sim.design();
    double sum = 0.0;
    for (const StateIndex& s : design.all_states()) {
        for (const auto& o : sim.exact_offdiag_distribution(s, m, m_prime, axis)) {
            if (o.k_out == s.k) sum += o.ancilla * o.probability;
        }
    }
    return sum / static_cast<double>(design.state_count());
}

}  // namespace seqpt
