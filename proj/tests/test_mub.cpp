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
#include <random>
#include <set>

#include "seqpt/mub.hpp"
#include "test_support.hpp"

using seqpt::BasisId;
using seqpt::BitVector;
using seqpt::CMatrix;
using seqpt::Complex;
using seqpt::CVector;
using seqpt::MubDesign;
using seqpt::PauliOperator;
using seqpt::StateIndex;

namespace {

std::vector<std::string> labels(const std::vector<PauliOperator>& ops) {
    std::vector<std::string> out;
    for (const auto& p : ops) out.push_back(p.to_string());
    return out;
}

}  // namespace

TEST_CASE("canonical generators", "[mub]") {
    const MubDesign d3(3);
    CHECK(labels(d3.generators(BasisId::parse("101", 3))) == std::vector<std::string>{"+YIZ", "+IYZ", "+ZZY"});
    CHECK(labels(MubDesign(2).generators(BasisId::computational(2))) == std::vector<std::string>{"+ZI", "+IZ"});
    const MubDesign d1(1);
    CHECK(labels(d1.generators(BasisId::parse("0", 1))) == std::vector<std::string>{"+X"});
    CHECK(labels(d1.generators(BasisId::parse("1", 1))) == std::vector<std::string>{"+Y"});
    CHECK_THROWS(d3.generators(BasisId::parse("10", 2)));
    CHECK_THROWS(BasisId::parse("10", 3));
    CHECK_THROWS(BasisId::parse("1x1", 3));
}

TEST_CASE("basis ordinals", "[mub]") {
    for (std::uint64_t j = 0; j < 9; ++j) CHECK(BasisId::from_ordinal(3, j).ordinal() == j);
    CHECK(BasisId::from_ordinal(3, 0).is_computational());
    CHECK(BasisId::from_ordinal(3, 1).label() == "000");
    CHECK(BasisId::from_ordinal(3, 6).label() == "101");
    CHECK_THROWS(BasisId::from_ordinal(3, 9));
}

TEST_CASE("generator groups are abelian, independent and partition the Paulis", "[mub]") {
    for (std::size_t n = 1; n <= 4; ++n) {
        const MubDesign d(n);
        std::set<std::uint64_t> seen;
        std::size_t members = 0;
        for (std::uint64_t j = 0; j < d.basis_count(); ++j) {
            const auto gens = d.generators(d.basis(j));
            REQUIRE(gens.size() == n);
            for (const auto& a : gens)
                for (const auto& b : gens) CHECK_FALSE(seqpt::symplectic_product(a, b));
            // Enumerate the group; independence means 2^n distinct elements.
            std::set<std::uint64_t> group;
            for (std::uint64_t mask = 0; mask < d.dimension(); ++mask) {
                PauliOperator p = PauliOperator::identity(n);
                for (std::size_t i = 0; i < n; ++i)
                    if ((mask >> i) & 1U) p = p * gens[i];
                group.insert(seqpt::pauli_index(p));
            }
            CHECK(group.size() == d.dimension());
            for (std::uint64_t m : group) {
                if (m == 0) continue;
                ++members;
                seen.insert(m);
            }
        }
        const std::uint64_t dd = d.dimension();
        CHECK(members == (dd + 1) * (dd - 1));
        CHECK(seen.size() == dd * dd - 1);
    }
}

TEST_CASE("commutation vectors and transitions", "[mub]") {
    const MubDesign d3(3);
    const BasisId z3 = BasisId::computational(3);
    const BasisId b101 = BasisId::parse("101", 3);
    CHECK(d3.commutation_vector(PauliOperator::identity(3), b101) == BitVector(3));
    CHECK(d3.commutation_vector(PauliOperator::from_label("XII"), z3) == BitVector::from_string("100"));
    CHECK(d3.commutation_vector(PauliOperator::from_label("ZII"), b101) == BitVector::from_string("100"));

    const StateIndex s{b101, BitVector(3)};
    CHECK(d3.transition_target(s, PauliOperator::identity(3)).k == s.k);
    CHECK(d3.transition_target(s, PauliOperator::from_label("ZII")).k == BitVector::from_string("100"));
    const MubDesign d2(2);
    CHECK(d2.transition_target({BasisId::computational(2), BitVector(2)}, PauliOperator::from_label("XI")).k ==
          BitVector::from_string("10"));
}

TEST_CASE("transition targets agree with dense action", "[mub]") {
    std::mt19937_64 gen(17);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + gen() % 3;
        const MubDesign d(n);
        const StateIndex s{d.basis(gen() % d.basis_count()), BitVector(n, gen())};
        const PauliOperator e = seqpt::pauli_from_index(n, gen() % (std::uint64_t{1} << (2 * n)));
        const StateIndex target = d.transition_target(s, e);
        const CVector moved = seqpt::dense_matrix(e) * d.state_vector(s);
        CHECK(seqpt::ray_overlap(moved, d.state_vector(target)) == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("state vectors", "[mub]") {
    const MubDesign d2(2);
    for (std::uint64_t k = 0; k < 4; ++k) {
        const CVector v = d2.state_vector({BasisId::computational(2), BitVector::from_basis_index(2, k)});
        CHECK(v.isApprox(CVector::Unit(4, static_cast<Eigen::Index>(k))));
    }
    const MubDesign d1(1);
    const CVector plus = d1.state_vector({BasisId::parse("0", 1), BitVector(1)});
    CHECK(seqpt::ray_overlap(plus, CVector::Constant(2, 1.0 / std::sqrt(2.0))) == Catch::Approx(1.0));

    // Each state is a joint eigenvector of its basis's generators, with signs fixed by k and the circuit.
    for (std::size_t n = 1; n <= 3; ++n) {
        const MubDesign d(n);
        for (const StateIndex& s : d.all_states()) {
            const CVector psi = d.state_vector(s);
            for (const auto& g : d.generators(s.basis)) {
                const Complex ev = psi.dot(seqpt::dense_matrix(g) * psi);
                CHECK(std::abs(std::abs(ev) - 1.0) < 1e-10);
            }
        }
    }
}

TEST_CASE("bases are mutually unbiased", "[mub]") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const MubDesign d(n);
        const auto mats = d.basis_matrices();
        const double inv_d = 1.0 / static_cast<double>(d.dimension());
        double worst = 0.0;
        for (std::size_t a = 0; a < mats.size(); ++a) {
            CHECK((mats[a].adjoint() * mats[a] - CMatrix::Identity(mats[a].rows(), mats[a].cols()))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
            for (std::size_t b = a + 1; b < mats.size(); ++b) {
                const CMatrix overlap = mats[a].adjoint() * mats[b];
                worst = std::max(worst, (overlap.cwiseAbs2().array() - inv_d).abs().maxCoeff());
            }
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("design average matches the two-design trace formula", "[mub]") {
    const MubDesign d1(1);
    CMatrix z(2, 2);
    z << 1, 0, 0, -1;
    CHECK(std::abs(seqpt::exact_design_average(d1, z, z) - 1.0 / 3.0) < 1e-12);
    const CMatrix id = CMatrix::Identity(4, 4);
    CHECK(std::abs(seqpt::exact_design_average(MubDesign(2), id, id) - 1.0) < 1e-12);

    std::mt19937_64 gen(23);
    for (std::size_t n = 1; n <= 3; ++n) {
        const MubDesign d(n);
        const auto dim = static_cast<Eigen::Index>(d.dimension());
        for (int t = 0; t < 20; ++t) {
            const CMatrix a = seqpt::testing::random_complex_matrix(dim, dim, gen);
            const CMatrix b = seqpt::testing::random_hermitian(dim, gen);
            CHECK(std::abs(seqpt::exact_design_average(d, a, b) - seqpt::haar_average(a, b)) < 1e-9);
        }
    }
    CHECK_THROWS(seqpt::exact_design_average(MubDesign(4), CMatrix::Identity(16, 16), CMatrix::Identity(16, 16)));
}
