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


#include <catch_amalgamated.hpp>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "seqpt/estimator.hpp"
#include "test_support.hpp"

using seqpt::BasisId;
using seqpt::BitVector;
using seqpt::ChannelSimulator;
using seqpt::CMatrix;
using seqpt::Complex;
using seqpt::ExperimentRecord;
using seqpt::MubDesign;
using seqpt::PauliOperator;
using seqpt::QuantumChannel;
using seqpt::Rng;
using seqpt::RunOptions;
using seqpt::StateIndex;

namespace {

QuantumChannel sparse_channel() { return QuantumChannel::pauli(2, {{"II", 0.85}, {"XI", 0.10}, {"ZZ", 0.05}}); }

CMatrix rotation_x(double theta) {
    CMatrix u(2, 2);
    u << std::cos(theta), Complex(0, -std::sin(theta)), Complex(0, -std::sin(theta)), std::cos(theta);
    return u;
}

}  // namespace

TEST_CASE("sample budgets", "[estimator]") {
    CHECK(seqpt::chernoff_samples(0.05, 0.95) == 738);
    CHECK(seqpt::chernoff_samples(0.1, 0.99) == 265);
    CHECK(seqpt::chernoff_samples(0.5, 0.5) == 3);
    CHECK(seqpt::chernoff_samples(0.05, 0.9) == 600);
    CHECK_THROWS(seqpt::chernoff_samples(0.0, 0.9));
    CHECK_THROWS(seqpt::chernoff_samples(0.1, 1.0));

    CHECK(seqpt::samples_for_full_diag(0.25, 0.1, 0.9, 4) == 5000);
    CHECK(seqpt::samples_for_full_diag_asymptotic(0.1, 0.9) == 2000);
    CHECK(seqpt::samples_for_full_diag(0.25, 0.1, 0.9, std::uint64_t{1} << 40) - 2000 <= 1);
    CHECK_THROWS(seqpt::samples_for_full_diag(0.25, 1.0, 0.0, 1));
    CHECK_THROWS(seqpt::samples_for_full_diag(0.25, 0.1, 0.9, 6));
    // More confidence or precision never needs fewer shots.
    CHECK(seqpt::samples_for_full_diag(0.25, 0.05, 0.9, 8) > seqpt::samples_for_full_diag(0.25, 0.1, 0.9, 8));
    CHECK(seqpt::samples_for_full_diag(0.25, 0.1, 0.95, 8) > seqpt::samples_for_full_diag(0.25, 0.1, 0.9, 8));
    CHECK(seqpt::samples_for_full_diag(0.05, 0.1, 0.9, 8) > seqpt::samples_for_full_diag(0.25, 0.1, 0.9, 8));
}

TEST_CASE("state sampling is uniform and reproducible", "[estimator]") {
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        Rng rng = Rng::for_shot(5, static_cast<std::uint64_t>(i));
        const StateIndex s = seqpt::sample_state_index(1, rng);
        ++counts[{s.basis.ordinal(), s.k.basis_index()}];
    }
    REQUIRE(counts.size() == 6);
    const double p = 1.0 / 6.0;
    const double sigma = std::sqrt(draws * p * (1 - p));
    for (const auto& [key, c] : counts) CHECK(std::abs(c - draws * p) <= 4 * sigma);

    std::map<std::pair<std::uint64_t, std::uint64_t>, int> seen;
    for (int i = 0; i < 10000; ++i) {
        Rng rng = Rng::for_shot(6, static_cast<std::uint64_t>(i));
        const StateIndex s = seqpt::sample_state_index(2, rng);
        ++seen[{s.basis.ordinal(), s.k.basis_index()}];
    }
    CHECK(seen.size() == 20);

    Rng a(99);
    Rng b(99);
    for (int i = 0; i < 50; ++i) {
        const StateIndex x = seqpt::sample_state_index(3, a);
        const StateIndex y = seqpt::sample_state_index(3, b);
        CHECK(x.basis == y.basis);
        CHECK(x.k == y.k);
    }
}

TEST_CASE("diagonal estimator", "[estimator]") {
    const MubDesign d3(3);
    const ChannelSimulator ident(d3, QuantumChannel::identity(3));
    const auto e = seqpt::estimate_diag(ident, PauliOperator::identity(3), 137, {.seed = 1});
    CHECK(e.value == 1.0);
    CHECK(e.raw_count == 137);
    CHECK(e.stderr_ == 0.0);
    const ChannelSimulator xii(d3, QuantumChannel::pauli(3, {{"XII", 1.0}}));
    CHECK(seqpt::estimate_diag(xii, PauliOperator::from_label("XII"), 50, {.seed = 2}).value == 1.0);

    const MubDesign d1(1);
    const ChannelSimulator flip(d1, QuantumChannel::pauli(1, {{"I", 0.75}, {"X", 0.25}}));
    const auto f = seqpt::estimate_diag(flip, PauliOperator::from_label("X"), 10000, {.seed = 3});
    CHECK(std::abs(f.value - 0.25) <= 4 * f.stderr_);
    CHECK_THROWS(seqpt::estimate_diag(flip, PauliOperator::from_label("X"), 0, {.seed = 3}));
}

TEST_CASE("scan replay reproduces the targeted count and parallel runs match", "[estimator]") {
    const MubDesign d(2);
    const ChannelSimulator sim(d, sparse_channel());
    const auto records = seqpt::collect_scan(sim, 3000, {.seed = 11});
    const auto parallel = seqpt::collect_scan(sim, 3000, {.seed = 11, .jobs = 4});
    REQUIRE(records.size() == parallel.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(records[i].basis == parallel[i].basis);
        CHECK(records[i].k_in == parallel[i].k_in);
        CHECK(records[i].k_out == parallel[i].k_out);
    }
    for (std::uint64_t m = 0; m < 16; ++m) {
        const auto op = seqpt::pauli_from_index(2, m);
        CHECK(seqpt::estimate_diag_from_records(records, d, op).raw_count ==
              seqpt::estimate_diag(sim, op, 3000, {.seed = 11}).raw_count);
    }
    CHECK_THROWS(seqpt::estimate_diag_from_records({}, d, PauliOperator::identity(2)));

    const ChannelSimulator ident(d, QuantumChannel::identity(2));
    for (const auto& r : seqpt::collect_scan(ident, 200, {.seed = 4})) CHECK(r.k_out == r.k_in);
}

TEST_CASE("scan estimates every diagonal coefficient", "[estimator]") {
    const MubDesign d(2);
    const auto ch = sparse_channel();
    const ChannelSimulator sim(d, ch);
    const CMatrix chi = seqpt::chi_from_kraus(ch);
    const auto records = seqpt::collect_scan(sim, 10000, {.seed = 2024});
    for (std::uint64_t m = 0; m < 16; ++m) {
        const auto e = seqpt::estimate_diag_from_records(records, d, seqpt::pauli_from_index(2, m));
        const double truth = chi(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)).real();
        // A coefficient of 0 with no survivals has zero sampled stderr; use the binomial width at the truth.
        const double f = (4 * truth + 1) / 5;
        const double sigma = 1.25 * std::sqrt(f * (1 - f) / 10000);
        CHECK(std::abs(e.value - truth) <= 4 * sigma);
    }
}

TEST_CASE("estimator is unbiased and indicator variance is bounded", "[estimator]") {
    const MubDesign d(2);
    const ChannelSimulator sim(d, sparse_channel());
    const auto xi = PauliOperator::from_label("XI");
    double sum = 0.0;
    double sq = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        const auto e = seqpt::estimate_diag(sim, xi, 500, {.seed = 1000 + static_cast<std::uint64_t>(t)});
        sum += e.value;
        sq += e.value * e.value;
        const double f = static_cast<double>(e.raw_count) / 500.0;
        CHECK(f * (1 - f) <= 0.25);
    }
    const double mean = sum / trials;
    const double sd = std::sqrt((sq / trials - mean * mean) * trials / (trials - 1));
    CHECK(std::abs(mean - 0.10) < 4 * sd / std::sqrt(trials));
}

TEST_CASE("off-diagonal estimator", "[estimator]") {
    const MubDesign d1(1);
    const ChannelSimulator ident(d1, QuantumChannel::identity(1));
    const auto e = seqpt::estimate_offdiag(ident, PauliOperator::identity(1), PauliOperator::identity(1), 200, {.seed = 1});
    CHECK(e.re == Catch::Approx(1.0));
    CHECK(std::abs(e.im) <= 4 * e.stderr_im + 0.05);
    CHECK_THROWS(seqpt::estimate_offdiag(ident, PauliOperator::identity(1), PauliOperator::identity(1), 3, {.seed = 1}));

    const ChannelSimulator rot(d1, QuantumChannel::unitary(1, rotation_x(std::numbers::pi / 8)));
    const auto r = seqpt::estimate_offdiag(rot, PauliOperator::identity(1), PauliOperator::from_label("X"), 40000,
                                           {.seed = 8, .jobs = 2});
    CHECK(std::abs(r.im - 0.5 * std::sin(std::numbers::pi / 4)) <= 4 * r.stderr_im);
    CHECK(std::abs(r.re) <= 4 * r.stderr_re);

    // With m = m' both estimators target chi_mm.
    const MubDesign d2(2);
    const ChannelSimulator sim(d2, sparse_channel());
    const auto xi = PauliOperator::from_label("XI");
    const auto od = seqpt::estimate_offdiag(sim, xi, xi, 20000, {.seed = 12});
    const auto dg = seqpt::estimate_diag(sim, xi, 20000, {.seed = 13});
    CHECK(std::abs(od.re - dg.value) <= 4 * std::hypot(od.stderr_re, dg.stderr_));
}

TEST_CASE("pair solving", "[estimator]") {
    const MubDesign d(2);
    const ExperimentRecord same1{BasisId::parse("01", 2), BitVector::from_string("10"), BitVector::from_string("10")};
    const ExperimentRecord same2{BasisId::computational(2), BitVector::from_string("01"), BitVector::from_string("01")};
    CHECK(seqpt::solve_pair(same1, same2, d)->is_identity());
    CHECK_FALSE(seqpt::solve_pair(same1, same1, d).has_value());

    std::mt19937_64 gen(61);
    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + t % 2;
        const MubDesign dn(n);
        const auto e = seqpt::pauli_from_index(n, gen() % (std::uint64_t{1} << (2 * n)));
        const ChannelSimulator sim(dn, QuantumChannel::unitary(n, seqpt::dense_matrix(e)));
        const auto records = seqpt::collect_scan(sim, 12, {.seed = gen()});
        for (std::size_t i = 0; i < records.size(); ++i) {
            for (std::size_t j = i + 1; j < records.size(); ++j) {
                const auto got = seqpt::solve_pair(records[i], records[j], dn);
                if (records[i].basis == records[j].basis) {
                    CHECK_FALSE(got.has_value());
                    continue;
                }
                const auto brute = seqpt::testing::brute_force_pair(records[i], records[j], dn);
                REQUIRE(brute.size() == 1);
                CHECK(*got == brute[0]);
                CHECK(got->label() == e.label());
                ++checked;
            }
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("detection of large coefficients", "[estimator]") {
    const MubDesign d(2);
    const ChannelSimulator ident(d, QuantumChannel::identity(2));
    const auto id_records = seqpt::collect_scan(ident, 300, {.seed = 3});
    const auto id_result = seqpt::detect_large_coefficients(id_records, d);
    REQUIRE(id_result.detected.size() == 1);
    CHECK(id_result.detected[0].op.is_identity());
    CHECK(id_result.detected[0].estimate.value == 1.0);
    CHECK_FALSE(id_result.unreliable);

    const ChannelSimulator sim(d, sparse_channel());
    int found = 0;
    int top_is_identity = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto records = seqpt::collect_scan(sim, 2000, {.seed = seed});
        std::size_t pairs = 0;
        const auto result = seqpt::detect_large_coefficients(
            records, d, [&](const ExperimentRecord& a, const ExperimentRecord& b, const PauliOperator& e) {
                const auto brute = seqpt::testing::brute_force_pair(a, b, d);
                CHECK((brute.size() == 1 && brute[0] == e));
                ++pairs;
            });
        CHECK(pairs == result.pairs_processed);
        CHECK_FALSE(result.unreliable);
        bool xi = false;
        bool zz = false;
        for (const auto& det : result.detected) {
            const double truth = det.op.label() == "II" ? 0.85 : det.op.label() == "XI" ? 0.10
                                                                 : det.op.label() == "ZZ" ? 0.05
                                                                                          : 0.0;
            if (det.op.label() == "XI") xi = std::abs(det.estimate.value - truth) <= 4 * det.estimate.stderr_;
            if (det.op.label() == "ZZ") zz = std::abs(det.estimate.value - truth) <= 4 * det.estimate.stderr_;
        }
        if (xi && zz) ++found;
        if (!result.detected.empty() && result.detected[0].op.is_identity()) ++top_is_identity;
    }
    CHECK(found >= 19);
    CHECK(top_is_identity >= 19);

    std::vector<CMatrix> dep;
    for (std::uint64_t m = 0; m < 16; ++m) dep.push_back(seqpt::dense_matrix(seqpt::pauli_from_index(2, m)) / 4.0);
    const ChannelSimulator depol(d, QuantumChannel::kraus(2, dep));
    int flagged = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        flagged += seqpt::detect_large_coefficients(seqpt::collect_scan(depol, 200, {.seed = seed}), d).unreliable;
    }
    CHECK(flagged >= 9);
    const std::vector<ExperimentRecord> single(1, ExperimentRecord{BasisId::computational(2), BitVector(2), BitVector(2)});
    CHECK_THROWS(seqpt::detect_large_coefficients(single, d));
}

TEST_CASE("record lines", "[estimator]") {
    const ExperimentRecord r{BasisId::parse("101", 3), BitVector::from_string("011"), BitVector::from_string("110")};
    CHECK(seqpt::format_record(r) == "101 011 110");
    const auto back = seqpt::parse_record("101 011 110");
    CHECK(back.basis == r.basis);
    CHECK(back.k_out == r.k_out);
    CHECK(seqpt::parse_record("Z 01 00").basis.is_computational());
    CHECK_THROWS(seqpt::parse_record("Z 01"));
    CHECK_THROWS(seqpt::parse_record("Z 01 000"));
    CHECK_THROWS(seqpt::parse_record("11 010 000"));
}
