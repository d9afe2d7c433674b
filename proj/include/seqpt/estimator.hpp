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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seqpt/gf2.hpp"
#include "seqpt/mub.hpp"
#include "seqpt/pauli.hpp"
#include "seqpt/rng.hpp"
#include "seqpt/simulator.hpp"
#include "seqpt/stabilizer_basis.hpp"

namespace seqpt {

/// Raised when an internal algebraic invariant fails (e.g. a singular cross-basis commutation matrix).
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Diagonal estimate chi_mm with its standard error. Values are not clipped to [0, 1].
struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::size_t n_samples = 0;
    /// Number of shots counted as successes.
    std::size_t raw_count = 0;
};

/// Off-diagonal estimate of chi_{m m'}; standard errors are per component.
struct ComplexEstimate {
    double re = 0.0;
    double im = 0.0;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    std::size_t n_samples = 0;
    /// Sum of ancilla * survival over the sigma_x and sigma_y halves.
    long long raw_sum_x = 0;
    long long raw_sum_y = 0;
};

// ---------------------------------------------------------------------------------------------------------
// Sample budgets

namespace detail {

inline std::size_t ceil_count(double v) {
    // Absorb rounding noise so exact integers (e.g. 5000) are not bumped to the next value.
    return static_cast<std::size_t>(std::ceil(v * (1.0 - 1e-12)));
}

}  // namespace detail

/// Smallest M with M >= ln(2 / (1 - p)) / (2 eps^2): |F_hat - F| <= eps with probability p.
inline std::size_t chernoff_samples(double eps, double p) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("chernoff_samples: eps must lie in (0, 1)");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("chernoff_samples: p must lie in (0, 1)");
    return detail::ceil_count(std::log(2.0 / (1.0 - p)) / (2.0 * eps * eps));
}

/// Shots sufficient to estimate every chi_mm > eps within delta with probability P:
/// M >= 2 (D + 1/eps)(D + 1) / (D^2 delta^2 (1 - P)). For eps >> 1/D this tends to 2 / (delta^2 (1 - P)).
inline std::size_t samples_for_full_diag(double eps, double delta, double big_p, std::uint64_t dimension) {
    if (dimension < 2 || (dimension & (dimension - 1)) != 0) {
        throw std::invalid_argument("samples_for_full_diag: D must be a power of two >= 2");
    }
    if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("samples_for_full_diag: eps must lie in (0, 1]");
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("samples_for_full_diag: delta must lie in (0, 1]");
    if (!(big_p >= 0.0 && big_p < 1.0)) throw std::invalid_argument("samples_for_full_diag: P must lie in [0, 1)");
    const double d = static_cast<double>(dimension);
    return detail::ceil_count(2.0 * (d + 1.0 / eps) * (d + 1.0) / (d * d * delta * delta * (1.0 - big_p)));
}

/// The eps >> 1/D limit of samples_for_full_diag.
inline std::size_t samples_for_full_diag_asymptotic(double delta, double big_p) {
    if (!(delta > 0.0 && delta <= 1.0) || !(big_p >= 0.0 && big_p < 1.0)) {
        throw std::invalid_argument("samples_for_full_diag_asymptotic: parameters out of range");
    }
    return detail::ceil_count(2.0 / (delta * delta * (1.0 - big_p)));
}

// ---------------------------------------------------------------------------------------------------------
// Sampling

/// Uniform over all D (D + 1) design states, drawn with replacement.
inline StateIndex sample_state_index(std::size_t n, Rng& rng) {
    const std::uint64_t d = std::uint64_t{1} << n;
    const BasisId basis = BasisId::from_ordinal(n, rng.below(d + 1));
    return {basis, BitVector(n, rng.bits(static_cast<unsigned>(n)))};
}

/// Runs body(i) for i in [0, count), spread over `jobs` threads. Results depend only on i.
template <typename Body>
void for_each_shot(std::size_t count, unsigned jobs, Body&& body) {
    jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += jobs) body(i);
        });
    }
    for (auto& t : workers) t.join();
}

struct RunOptions {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

/// M transition experiments on independently drawn design states. Shot i uses Rng::for_shot(seed, i).
inline std::vector<ExperimentRecord> collect_scan(const ChannelSimulator& sim, std::size_t shots,
                                                  const RunOptions& opts) {
    if (shots == 0) throw std::invalid_argument("collect_scan: need at least one shot");
    std::vector<ExperimentRecord> records(shots);
    for_each_shot(shots, opts.jobs, [&](std::size_t i) {
        Rng rng = Rng::for_shot(opts.seed, i);
        const StateIndex s = sample_state_index(sim.qubits(), rng);
        records[i] = sim.run_transition_experiment(s, rng).record;
    });
    return records;
}

namespace detail {

inline Estimate diag_estimate_from_count(std::size_t count, std::size_t shots, std::uint64_t dimension) {
    const double d = static_cast<double>(dimension);
    const double f = static_cast<double>(count) / static_cast<double>(shots);
    Estimate e;
    e.value = ((d + 1.0) * f - 1.0) / d;
    e.stderr_ = (d + 1.0) / d * std::sqrt(f * (1.0 - f) / static_cast<double>(shots));
    e.n_samples = shots;
    e.raw_count = count;
    return e;
}

}  // namespace detail

/// Replays the diagonal estimator over stored records: a shot counts iff k_out XOR k_in equals the
/// commutation vector of E_m in the shot's basis. Generators are derived once per distinct basis.
inline Estimate estimate_diag_from_records(std::span<const ExperimentRecord> records, const MubDesign& design,
                                           const PauliOperator& m) {
    if (records.empty()) throw std::invalid_argument("estimate_diag_from_records: no records");
    std::unordered_map<std::uint64_t, BitVector> expected;
    std::size_t count = 0;
    for (const auto& r : records) {
        const std::uint64_t key = r.basis.ordinal();
        auto it = expected.find(key);
        if (it == expected.end()) it = expected.emplace(key, design.commutation_vector(m, r.basis)).first;
        if (r.shift() == it->second) ++count;
    }
    return detail::diag_estimate_from_count(count, records.size(), design.dimension());
}

/// Estimates chi_mm from M fresh shots. Uses the same shot streams as collect_scan, so for equal seeds
/// the count matches estimate_diag_from_records(collect_scan(...)).
inline Estimate estimate_diag(const ChannelSimulator& sim, const PauliOperator& m, std::size_t shots,
                              const RunOptions& opts) {
    const auto records = collect_scan(sim, shots, opts);
    return estimate_diag_from_records(records, sim.design(), m);
}

/// Ancilla-assisted estimate of chi_{m m'}. Shots [0, M/2) measure the ancilla along x, [M/2, M) along y.
/// Re = ((D+1) E_x - delta_{m m'}) / D and Im = (D+1) E_y / D, where E_a is the mean of ancilla * survival.
inline ComplexEstimate estimate_offdiag(const ChannelSimulator& sim, const PauliOperator& m,
                                        const PauliOperator& m_prime, std::size_t shots, const RunOptions& opts) {
    if (shots < 2 || shots % 2 != 0) {
        throw std::invalid_argument("estimate_offdiag: shot count must be even and at least 2");
    }
    const std::size_t half = shots / 2;
    std::vector<int> value(shots, 0);
    for_each_shot(shots, opts.jobs, [&](std::size_t i) {
        Rng rng = Rng::for_shot(opts.seed, i);
        const StateIndex s = sample_state_index(sim.qubits(), rng);
        const AncillaAxis axis = i < half ? AncillaAxis::kX : AncillaAxis::kY;
        const ShotOutcome out = sim.run_offdiag_experiment(s, m, m_prime, axis, rng);
        value[i] = out.record.k_out == out.record.k_in ? *out.ancilla : 0;
    });
    const double d = static_cast<double>(sim.design().dimension());
    const double scale = (d + 1.0) / d;
    auto summarize = [&](std::size_t begin, long long& sum, double& mean, double& se) {
        sum = 0;
        long long sq = 0;
        for (std::size_t i = begin; i < begin + half; ++i) {
            sum += value[i];
            sq += value[i] * value[i];
        }
        const double h = static_cast<double>(half);
        mean = static_cast<double>(sum) / h;
        const double var = half > 1 ? (static_cast<double>(sq) - h * mean * mean) / (h - 1.0) : 0.0;
        se = std::sqrt(std::max(0.0, var) / h);
    };
    ComplexEstimate e;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double se_x = 0.0;
    double se_y = 0.0;
    summarize(0, e.raw_sum_x, mean_x, se_x);
    summarize(half, e.raw_sum_y, mean_y, se_y);
    const double delta = m.canonical() == m_prime.canonical() ? 1.0 : 0.0;
    e.re = ((d + 1.0) * mean_x - delta) / d;
    e.im = scale * mean_y;
    e.stderr_re = scale * se_x;
    e.stderr_im = scale * se_y;
    e.n_samples = shots;
    return e;
}

// ---------------------------------------------------------------------------------------------------------
// Pair solving and large-coefficient detection

/// C(i, j) = 1 iff generator i of `a` anticommutes with generator j of `b`.
inline BitMatrix cross_commutation_matrix(const std::vector<PauliOperator>& a, const std::vector<PauliOperator>& b) {
    BitMatrix c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c.set(i, j, symplectic_product(a[i], b[j]));
    return c;
}

/// The Pauli whose commutation vectors reproduce the shifts of two records taken in different bases.
///
/// With E = prod J_i^{q_i} prod J'_i^{q'_i}, the shifts satisfy shift_1 = C q' and shift_2 = C^T q.
/// Returns nullopt when both records share a basis (then either no operator or D of them fit).
/// The phase of the product is dropped.
inline std::optional<PauliOperator> solve_pair(const ExperimentRecord& r1, const ExperimentRecord& r2,
                                               const MubDesign& design) {
    if (r1.basis.size() != r2.basis.size()) throw std::invalid_argument("solve_pair: qubit counts differ");
    if (r1.basis == r2.basis) return std::nullopt;
    const auto g1 = design.generators(r1.basis);
    const auto g2 = design.generators(r2.basis);
    const BitMatrix c = cross_commutation_matrix(g1, g2);
    BitVector q;
    BitVector q_prime;
    try {
        q_prime = solve_linear(c, r1.shift());
        q = solve_linear(c.transpose(), r2.shift());
    } catch (const SingularMatrixError&) {
        throw InvariantViolation("solve_pair: commutation matrix between bases " + r1.basis.label() + " and " +
                                 r2.basis.label() + " is singular");
    }
    PauliOperator e = PauliOperator::identity(design.qubits());
    for (std::size_t i = 0; i < g1.size(); ++i)
        if (q.get(i)) e = e * g1[i];
    for (std::size_t i = 0; i < g2.size(); ++i)
        if (q_prime.get(i)) e = e * g2[i];
    return e.canonical();
}

struct DetectedOperator {
    PauliOperator op;
    Estimate estimate;
};

struct DetectionResult {
    /// Candidates whose survival-fidelity estimate is at least 2/M, by descending chi estimate.
    std::vector<DetectedOperator> detected;
    /// Distinct operators produced by cross-basis pairs (identity included).
    std::size_t candidate_count = 0;
    /// Number of distinct (basis, shift) class pairs solved.
    std::size_t pairs_processed = 0;
    /// Set when the record set cannot single out dominant coefficients; see detect_large_coefficients.
    bool unreliable = false;
};

/// Called for every solved pair with a representative record of each class and the solution.
using PairVisitor = std::function<void(const ExperimentRecord&, const ExperimentRecord&, const PauliOperator&)>;

/// Finds the Paulis with large chi_mm from a single record set.
///
/// Every cross-basis record pair yields one candidate via solve_pair. Records with the same basis and shift
/// yield identical candidates, so pairs are formed between distinct (basis, shift) classes. Each candidate
/// is re-estimated on the full record set and kept if F_hat >= 2/M.
///
/// `unreliable` is set when the number of candidates exceeds M/2, or when no kept candidate sits
/// significantly (4 standard errors) above the flat-spectrum level 1/D^2; both happen when the chi
/// diagonal is spread out instead of concentrated on a few operators.
inline DetectionResult detect_large_coefficients(std::span<const ExperimentRecord> records, const MubDesign& design,
                                                 const PairVisitor& visitor = {}) {
    if (records.size() < 2) throw std::invalid_argument("detect_large_coefficients: need at least two records");
    std::vector<const ExperimentRecord*> classes;
    {
        std::map<std::pair<std::uint64_t, std::uint64_t>, const ExperimentRecord*> seen;
        for (const auto& r : records) seen.emplace(std::make_pair(r.basis.ordinal(), r.shift().word()), &r);
        for (const auto& [key, rec] : seen) classes.push_back(rec);
    }

    DetectionResult result;
    std::unordered_map<PauliOperator, bool, PauliKeyHash> candidates;
    candidates.emplace(PauliOperator::identity(design.qubits()), true);
    for (std::size_t a = 0; a < classes.size(); ++a) {
        for (std::size_t b = a + 1; b < classes.size(); ++b) {
            if (classes[a]->basis == classes[b]->basis) continue;
            const auto e = solve_pair(*classes[a], *classes[b], design);
            ++result.pairs_processed;
            if (visitor) visitor(*classes[a], *classes[b], *e);
            candidates.emplace(*e, true);
        }
    }
    result.candidate_count = candidates.size();

    const double m = static_cast<double>(records.size());
    const double d = static_cast<double>(design.dimension());
    for (const auto& [op, unused] : candidates) {
        const Estimate est = estimate_diag_from_records(records, design, op);
        if (static_cast<double>(est.raw_count) >= 2.0 - 1e-9) {
            result.detected.push_back({op, est});
        }
    }
    std::sort(result.detected.begin(), result.detected.end(), [](const auto& x, const auto& y) {
        if (x.estimate.value != y.estimate.value) return x.estimate.value > y.estimate.value;
        return pauli_index(x.op) < pauli_index(y.op);
    });

    bool significant = false;
    for (const auto& det : result.detected) {
        if (det.estimate.value - 4.0 * det.estimate.stderr_ > 1.0 / (d * d)) significant = true;
    }
    result.unreliable = static_cast<double>(result.candidate_count) > m / 2.0 || !significant;
    return result;
}

// ---------------------------------------------------------------------------------------------------------
// Record text format: one "J k_in k_out" line per shot, J being "Z" or the bitstring b.

inline std::string format_record(const ExperimentRecord& r) {
    return r.basis.label() + ' ' + r.k_in.to_string() + ' ' + r.k_out.to_string();
}

inline ExperimentRecord parse_record(const std::string& line) {
    const auto first = line.find(' ');
    const auto second = first == std::string::npos ? std::string::npos : line.find(' ', first + 1);
    if (second == std::string::npos || line.find(' ', second + 1) != std::string::npos) {
        throw std::invalid_argument("record line must have three fields: \"" + line + "\"");
    }
    const BitVector k_in = BitVector::from_string(line.substr(first + 1, second - first - 1));
    const BitVector k_out = BitVector::from_string(line.substr(second + 1));
    if (k_in.size() != k_out.size()) throw std::invalid_argument("record k_in/k_out lengths differ: \"" + line + "\"");
    return {BasisId::parse(line.substr(0, first), k_in.size()), k_in, k_out};
}

}  // namespace seqpt
