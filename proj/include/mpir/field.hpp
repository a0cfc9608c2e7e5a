#pragma once

#include <cstdint>
#include <vector>

#include "mpir/errors.hpp"

namespace mpir::gf {

bool is_prime(std::uint32_t q);

// Smallest prime strictly greater than n.
std::uint32_t next_prime_above(std::uint32_t n);

// One element of GF(q), q prime. Arithmetic helpers below assume both
// operands share the modulus; matrices store raw values against one modulus.
struct FieldElement {
    std::uint32_t value = 0;
    std::uint32_t modulus = 2;
};

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    std::uint32_t s = a + b;
    return s >= q ? s - q : s;
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return a >= b ? a - b : a + q - b;
}

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return static_cast<std::uint32_t>((std::uint64_t(a) * b) % q);
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t e, std::uint32_t q);

// Multiplicative inverse in GF(q). Throws ZeroInverse for a = 0.
std::uint32_t inverse(std::uint32_t a, std::uint32_t q);

inline FieldElement field_inv(FieldElement a) {
    return {inverse(a.value, a.modulus), a.modulus};
}

// Row-major matrix over GF(q).
class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(int rows, int cols, std::uint32_t q)
        : rows_(rows), cols_(cols), q_(q), e_(static_cast<std::size_t>(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::uint32_t modulus() const { return q_; }

    std::uint32_t& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
    std::uint32_t at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool operator==(const FieldMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && q_ == o.q_ && e_ == o.e_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::uint32_t q_ = 2;
    std::vector<std::uint32_t> e_;
};

// Determinant via elimination; 0 for singular.
std::uint32_t determinant(FieldMatrix m);

// Vandermonde-style generator: entry (r, c) = (c+1)^r mod q for r in
// [0, rows) and c in [0, cols). Every rows x rows submatrix is invertible as
// long as the evaluation points 1..cols stay distinct mod q, which needs
// q >= cols; smaller fields throw FieldTooSmall.
FieldMatrix rs_generator(int p, int m, std::uint32_t q);

// Result of solving A x = b over GF(q) with pivot analysis. `determined[i]`
// marks coordinates that take the same value in every solution of the
// system; `solution` is one particular solution (free coordinates = 0).
struct LinearSolution {
    std::vector<std::uint32_t> solution;
    std::vector<bool> determined;
    int rank = 0;
};

// Gaussian elimination with deterministic column order; pivot = first row
// with a nonzero entry in the current column. Throws Inconsistent when the
// system has no solution.
LinearSolution solve_linear(const FieldMatrix& a, const std::vector<std::uint32_t>& b);

}  // namespace mpir::gf
