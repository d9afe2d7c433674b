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

#include "seqpt/gf2.hpp"

using seqpt::BitMatrix;
using seqpt::BitVector;

TEST_CASE("bit vector text round trip and qubit order", "[gf2]") {
    const BitVector v = BitVector::from_string("101");
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
    CHECK(v.get(2));
    CHECK(v.to_string() == "101");
    CHECK(v.basis_index() == 0b101);
    CHECK(BitVector::from_string("100").basis_index() == 4);
    CHECK(BitVector::from_basis_index(3, 4) == BitVector::from_string("100"));
    CHECK_THROWS_AS(BitVector::from_string("10a"), std::invalid_argument);
    CHECK_THROWS(BitVector(3) ^ BitVector(2));
}

TEST_CASE("companion matrix", "[gf2]") {
    CHECK(seqpt::companion_matrix(BitVector::from_string("110")) ==
          BitMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 1, 0}}));
    CHECK(seqpt::companion_matrix(BitVector::from_string("1")) == BitMatrix::from_rows({{1}}));
    CHECK(seqpt::companion_matrix(BitVector::from_string("11")) == BitMatrix::from_rows({{0, 1}, {1, 1}}));
    CHECK_THROWS(seqpt::companion_matrix(BitVector(0)));
}

TEST_CASE("primitivity", "[gf2]") {
    CHECK(seqpt::validate_primitive(seqpt::companion_matrix(BitVector::from_string("110"))));
    CHECK_FALSE(seqpt::validate_primitive(BitMatrix::identity(2)));
    CHECK_FALSE(seqpt::validate_primitive(seqpt::companion_matrix(BitVector::from_string("100"))));
    // 1 + x^2 + x^4 = (1 + x + x^2)^2 is reducible.
    CHECK_FALSE(seqpt::validate_primitive(seqpt::companion_matrix(BitVector::from_string("1010"))));
    // 1 + x + x^2 + x^3 + x^4 is irreducible but of order 5, not 15.
    CHECK_FALSE(seqpt::validate_primitive(seqpt::companion_matrix(BitVector::from_string("1111"))));
    for (std::size_t n = 1; n <= 24; ++n) {
        INFO("degree " << n);
        CHECK(seqpt::validate_primitive(seqpt::field_matrix(n)));
    }
}

TEST_CASE("table matches the usual low-weight primitive polynomials", "[gf2]") {
    CHECK(seqpt::primitive_polynomial(1).to_string() == "1");
    CHECK(seqpt::primitive_polynomial(2).to_string() == "11");
    CHECK(seqpt::primitive_polynomial(3).to_string() == "110");
    CHECK(seqpt::primitive_polynomial(4).to_string() == "1100");
    CHECK(seqpt::primitive_polynomial(5).to_string() == "10100");
    CHECK(seqpt::primitive_polynomial(8).to_string() == "10111000");
    CHECK(seqpt::primitive_polynomial(10).to_string() == "1001000000");
    CHECK_THROWS(seqpt::primitive_polynomial(0));
    CHECK_THROWS(seqpt::primitive_polynomial(seqpt::kMaxTabulatedDegree + 1));
}

TEST_CASE("solve_linear", "[gf2]") {
    CHECK(seqpt::solve_linear(BitMatrix::identity(3), BitVector::from_string("101")) == BitVector::from_string("101"));
    CHECK(seqpt::solve_linear(BitMatrix::from_rows({{0, 1}, {1, 1}}), BitVector::from_string("10")) ==
          BitVector::from_string("11"));
    CHECK_THROWS_AS(seqpt::solve_linear(BitMatrix::from_rows({{1, 1}, {1, 1}}), BitVector::from_string("10")),
                    seqpt::SingularMatrixError);

    std::mt19937_64 gen(7);
    int solved = 0;
    while (solved < 100) {
        const std::size_t n = 1 + gen() % 8;
        std::vector<BitVector> rows;
        for (std::size_t i = 0; i < n; ++i) rows.emplace_back(n, gen());
        const BitMatrix a(rows);
        if (!seqpt::is_invertible(a)) continue;
        const BitVector x(n, gen());
        CHECK(seqpt::solve_linear(a, a * x) == x);
        ++solved;
    }
}

TEST_CASE("row vector times matrix", "[gf2]") {
    const BitMatrix m = seqpt::companion_matrix(BitVector::from_string("110"));
    CHECK(seqpt::mat_vec(BitVector::from_string("100"), m) == BitVector::from_string("010"));
    CHECK(seqpt::mat_vec(BitVector::from_string("101"), m.transpose()) == BitVector::from_string("011"));
    CHECK(seqpt::mat_vec(BitVector::from_string("101"), BitMatrix::identity(3)) == BitVector::from_string("101"));
    CHECK(seqpt::mat_vec(BitVector::from_string("011"), m) == m.transpose() * BitVector::from_string("011"));

    std::mt19937_64 gen(11);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + gen() % 10;
        std::vector<BitVector> rows;
        for (std::size_t i = 0; i < n; ++i) rows.emplace_back(n, gen());
        const BitMatrix a(rows);
        const BitVector u(n, gen());
        const BitVector v(n, gen());
        CHECK(seqpt::mat_vec(u ^ v, a) == (seqpt::mat_vec(u, a) ^ seqpt::mat_vec(v, a)));
    }
}
