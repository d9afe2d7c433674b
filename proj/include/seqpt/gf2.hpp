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
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seqpt {

/// Largest register size representable by the packed bit types.
inline constexpr std::size_t kMaxQubits = 64;

/// Thrown by solve_linear when the system matrix has no inverse over GF(2).
struct SingularMatrixError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-length vector over GF(2), packed into one machine word.
///
/// Bit i is qubit i + 1; in text form qubit 1 is the leftmost character.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(std::size_t size, std::uint64_t word = 0) : size_(size), word_(word & mask_for(size)) {
        if (size > kMaxQubits) {
            throw std::invalid_argument("BitVector size " + std::to_string(size) + " exceeds " +
                                        std::to_string(kMaxQubits));
        }
    }

    static BitVector unit(std::size_t size, std::size_t index) {
        BitVector v(size);
        v.set(index, true);
        return v;
    }

    /// Parses a string of '0'/'1' characters, qubit 1 first.
    static BitVector from_string(std::string_view text) {
        if (text.empty()) {
            throw std::invalid_argument("empty bitstring");
        }
        BitVector v(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1') {
                v.set(i, true);
            } else if (text[i] != '0') {
                throw std::invalid_argument("invalid bitstring character '" + std::string(1, text[i]) + "' in \"" +
                                            std::string(text) + "\"");
            }
        }
        return v;
    }

    std::string to_string() const {
        std::string out(size_, '0');
        for (std::size_t i = 0; i < size_; ++i) {
            if (get(i)) out[i] = '1';
        }
        return out;
    }

    std::size_t size() const { return size_; }
    std::uint64_t word() const { return word_; }

    bool get(std::size_t i) const { return (word_ >> i) & 1U; }
    void set(std::size_t i, bool value) {
        check_index(i);
        if (value) {
            word_ |= std::uint64_t{1} << i;
        } else {
            word_ &= ~(std::uint64_t{1} << i);
        }
    }
    void flip(std::size_t i) {
        check_index(i);
        word_ ^= std::uint64_t{1} << i;
    }

    bool none() const { return word_ == 0; }
    std::size_t popcount() const { return static_cast<std::size_t>(std::popcount(word_)); }

    /// Inner product mod 2.
    bool dot(const BitVector& other) const {
        require_same_size(other);
        return std::popcount(word_ & other.word_) & 1;
    }

    BitVector& operator^=(const BitVector& other) {
        require_same_size(other);
        word_ ^= other.word_;
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector&, const BitVector&) = default;

    /// Index of the computational basis state |b_1 ... b_n> with qubit 1 as the most significant bit.
    std::uint64_t basis_index() const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < size_; ++i) {
            idx = (idx << 1) | static_cast<std::uint64_t>(get(i));
        }
        return idx;
    }
    static BitVector from_basis_index(std::size_t size, std::uint64_t idx) {
        BitVector v(size);
        for (std::size_t i = 0; i < size; ++i) {
            v.set(size - 1 - i, (idx >> i) & 1U);
        }
        return v;
    }

    void require_same_size(const BitVector& other) const {
        if (other.size_ != size_) {
            throw std::invalid_argument("bit vector size mismatch: " + std::to_string(size_) + " vs " +
                                        std::to_string(other.size_));
        }
    }

   private:
    static constexpr std::uint64_t mask_for(std::size_t size) {
        return size >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
    }
    void check_index(std::size_t i) const {
        if (i >= size_) {
            throw std::out_of_range("bit index " + std::to_string(i) + " out of range for size " +
                                    std::to_string(size_));
        }
    }

    std::size_t size_ = 0;
    std::uint64_t word_ = 0;
};

/// Square matrix over GF(2), stored as rows.
class BitMatrix {
   public:
    BitMatrix() = default;
    explicit BitMatrix(std::size_t n) : rows_(n, BitVector(n)) {}
    explicit BitMatrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {
        for (const auto& r : rows_) {
            if (r.size() != rows_.size()) {
                throw std::invalid_argument("BitMatrix must be square");
            }
        }
    }

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i, true);
        return m;
    }

    /// Builds from nested 0/1 lists, row-major.
    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
        std::vector<BitVector> out;
        for (const auto& row : rows) {
            BitVector v(row.size());
            std::size_t j = 0;
            for (int bit : row) v.set(j++, bit != 0);
            out.push_back(v);
        }
        return BitMatrix(std::move(out));
    }

    std::size_t size() const { return rows_.size(); }
    const BitVector& row(std::size_t i) const { return rows_.at(i); }
    BitVector& row(std::size_t i) { return rows_.at(i); }
    bool get(std::size_t i, std::size_t j) const { return rows_.at(i).get(j); }
    void set(std::size_t i, std::size_t j, bool v) { rows_.at(i).set(j, v); }

    BitMatrix transpose() const {
        BitMatrix t(size());
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = 0; j < size(); ++j) {
                if (get(i, j)) t.set(j, i, true);
            }
        }
        return t;
    }

    /// Column vector product A·x.
    BitVector operator*(const BitVector& x) const {
        if (x.size() != size()) {
            throw std::invalid_argument("matrix-vector dimension mismatch");
        }
        BitVector y(size());
        for (std::size_t i = 0; i < size(); ++i) y.set(i, rows_[i].dot(x));
        return y;
    }

    BitMatrix operator*(const BitMatrix& other) const {
        if (other.size() != size()) {
            throw std::invalid_argument("matrix-matrix dimension mismatch");
        }
        BitMatrix out(size());
        for (std::size_t i = 0; i < size(); ++i) {
            BitVector acc(size());
            for (std::size_t k = 0; k < size(); ++k) {
                if (get(i, k)) acc ^= other.rows_[k];
            }
            out.rows_[i] = acc;
        }
        return out;
    }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

   private:
    std::vector<BitVector> rows_;
};

/// Row vector times matrix, v·A.
inline BitVector mat_vec(const BitVector& v, const BitMatrix& a) {
    if (v.size() != a.size()) {
        throw std::invalid_argument("mat_vec dimension mismatch: vector " + std::to_string(v.size()) + ", matrix " +
                                    std::to_string(a.size()));
    }
    BitVector out(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) out ^= a.row(i);
    }
    return out;
}

/// Companion matrix of p(x) = r_0 + r_1 x + ... + r_{n-1} x^{n-1} + x^n.
///
/// Ones on the superdiagonal, last row (r_0, ..., r_{n-1}).
inline BitMatrix companion_matrix(const BitVector& coeffs) {
    const std::size_t n = coeffs.size();
    if (n == 0) {
        throw std::invalid_argument("companion_matrix: polynomial degree must be at least 1");
    }
    BitMatrix m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, true);
    m.row(n - 1) = coeffs;
    return m;
}

/// Solves A·x = y by Gaussian elimination. Throws SingularMatrixError if A is singular.
inline BitVector solve_linear(const BitMatrix& a, const BitVector& y) {
    const std::size_t n = a.size();
    if (y.size() != n) {
        throw std::invalid_argument("solve_linear dimension mismatch");
    }
    // Augmented rows: bits [0, n) hold A, bit n holds y.
    std::vector<std::uint64_t> rows(n);
    std::vector<bool> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = a.row(i).word();
        rhs[i] = y.get(i);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && !((rows[pivot] >> col) & 1U)) ++pivot;
        if (pivot == n) {
            throw SingularMatrixError("solve_linear: matrix is singular over GF(2)");
        }
        std::swap(rows[pivot], rows[col]);
        {
            bool tmp = rhs[pivot];
            rhs[pivot] = rhs[col];
            rhs[col] = tmp;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r != col && ((rows[r] >> col) & 1U)) {
                rows[r] ^= rows[col];
                rhs[r] = rhs[r] != rhs[col];
            }
        }
    }
    BitVector x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, rhs[i]);
    return x;
}

inline bool is_invertible(const BitMatrix& a) {
    try {
        (void)solve_linear(a, BitVector(a.size()));
        return true;
    } catch (const SingularMatrixError&) {
        return false;
    }
}

namespace detail {

inline BitMatrix mat_pow(BitMatrix base, std::uint64_t e) {
    BitMatrix acc = BitMatrix::identity(base.size());
    while (e != 0) {
        if (e & 1U) acc = acc * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return acc;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p * p <= v; ++p) {
        if (v % p == 0) {
            out.push_back(p);
            while (v % p == 0) v /= p;
        }
    }
    if (v > 1) out.push_back(v);
    return out;
}

}  // namespace detail

/// True iff M^D = M and M^k != M for 1 < k < D, with D = 2^n.
///
/// Checked as "M has multiplicative order exactly D - 1" using the prime factors of D - 1.
inline bool validate_primitive(const BitMatrix& m) {
    const std::size_t n = m.size();
    if (n == 0 || n > 40) {
        return false;
    }
    if (!is_invertible(m)) {
        return false;
    }
    const std::uint64_t order = (std::uint64_t{1} << n) - 1;
    const BitMatrix id = BitMatrix::identity(n);
    if (detail::mat_pow(m, order) != id) {
        return false;
    }
    for (std::uint64_t p : detail::prime_factors(order)) {
        if (detail::mat_pow(m, order / p) == id) {
            return false;
        }
    }
    return true;
}

/// Low coefficients (r_0 ... r_{n-1}) of a primitive polynomial of degree n, bit i = r_i.
/// Entries are indexed by degree; index 0 is unused.
inline constexpr std::uint64_t kPrimitivePolynomials[] = {
    0,
    0b1,                                     // x + 1
    0b11,                                    // x^2 + x + 1
    0b011,                                   // x^3 + x + 1
    0b0011,                                  // x^4 + x + 1
    0b00101,                                 // x^5 + x^2 + 1
    0b000011,                                // x^6 + x + 1
    0b0000011,                               // x^7 + x + 1
    0b00011101,                              // x^8 + x^4 + x^3 + x^2 + 1
    0b000010001,                             // x^9 + x^4 + 1
    0b0000001001,                            // x^10 + x^3 + 1
    (1U << 0) | (1U << 2),                   // x^11 + x^2 + 1
    (1U << 0) | (1U << 1) | (1U << 4) | (1U << 6),   // x^12 + x^6 + x^4 + x + 1
    (1U << 0) | (1U << 1) | (1U << 3) | (1U << 4),   // x^13 + x^4 + x^3 + x + 1
    (1U << 0) | (1U << 1) | (1U << 6) | (1U << 10),  // x^14 + x^10 + x^6 + x + 1
    (1U << 0) | (1U << 1),                           // x^15 + x + 1
    (1U << 0) | (1U << 1) | (1U << 3) | (1U << 12),  // x^16 + x^12 + x^3 + x + 1
    (1U << 0) | (1U << 3),                           // x^17 + x^3 + 1
    (1U << 0) | (1U << 7),                           // x^18 + x^7 + 1
    (1U << 0) | (1U << 1) | (1U << 2) | (1U << 5),   // x^19 + x^5 + x^2 + x + 1
    (1U << 0) | (1U << 3),                           // x^20 + x^3 + 1
    (1U << 0) | (1U << 2),                           // x^21 + x^2 + 1
    (1U << 0) | (1U << 1),                           // x^22 + x + 1
    (1U << 0) | (1U << 5),                           // x^23 + x^5 + 1
    (1U << 0) | (1U << 1) | (1U << 2) | (1U << 7),   // x^24 + x^7 + x^2 + x + 1
    (1U << 0) | (1U << 3),                           // x^25 + x^3 + 1
    (1U << 0) | (1U << 1) | (1U << 2) | (1U << 6),   // x^26 + x^6 + x^2 + x + 1
    (1U << 0) | (1U << 1) | (1U << 2) | (1U << 5),   // x^27 + x^5 + x^2 + x + 1
    (1U << 0) | (1U << 3),                           // x^28 + x^3 + 1
    (1U << 0) | (1U << 2),                           // x^29 + x^2 + 1
    (1U << 0) | (1U << 1) | (1U << 2) | (1U << 23),  // x^30 + x^23 + x^2 + x + 1
    (1U << 0) | (1U << 3),                           // x^31 + x^3 + 1
    (1U << 0) | (1U << 1) | (1U << 2) | (1U << 22),  // x^32 + x^22 + x^2 + x + 1
};

inline constexpr std::size_t kMaxTabulatedDegree = std::size(kPrimitivePolynomials) - 1;

inline BitVector primitive_polynomial(std::size_t degree) {
    if (degree == 0 || degree > kMaxTabulatedDegree) {
        throw std::invalid_argument("no tabulated primitive polynomial of degree " + std::to_string(degree));
    }
    return BitVector(degree, kPrimitivePolynomials[degree]);
}

/// Companion matrix of the tabulated polynomial for `degree`, checked for primitivity.
inline BitMatrix field_matrix(std::size_t degree) {
    BitMatrix m = companion_matrix(primitive_polynomial(degree));
    if (!validate_primitive(m)) {
        throw std::logic_error("tabulated polynomial of degree " + std::to_string(degree) + " is not primitive");
    }
    return m;
}

}  // namespace seqpt
