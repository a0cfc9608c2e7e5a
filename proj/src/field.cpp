#include "mpir/field.hpp"

#include <string>

namespace mpir::gf {

bool is_prime(std::uint32_t q) {
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (std::uint32_t d = 3; std::uint64_t(d) * d <= q; d += 2) {
        if (q % d == 0) return false;
    }
    return true;
}

std::uint32_t next_prime_above(std::uint32_t n) {
    std::uint32_t q = n + 1;
    while (!is_prime(q)) ++q;
    return q;
}

std::uint32_t pow_mod(std::uint32_t base, std::uint64_t e, std::uint32_t q) {
    std::uint64_t r = 1 % q, b = base % q;
    while (e) {
        if (e & 1) r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

std::uint32_t inverse(std::uint32_t a, std::uint32_t q) {
    a %= q;
    if (a == 0) throw ZeroInverse();
    // q is prime, so a^(q-2) works and avoids signed extended-gcd fiddling.
    return pow_mod(a, q - 2, q);
}

std::uint32_t determinant(FieldMatrix m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    const std::uint32_t q = m.modulus();
    const int n = m.rows();
    std::uint32_t det = 1 % q;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r) {
            if (m.at(r, col) != 0) { pivot = r; break; }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
            det = sub(0, det, q);
        }
        det = mul(det, m.at(col, col), q);
        const std::uint32_t inv = inverse(m.at(col, col), q);
        for (int r = col + 1; r < n; ++r) {
            if (m.at(r, col) == 0) continue;
            const std::uint32_t f = mul(m.at(r, col), inv, q);
            for (int c = col; c < n; ++c) {
                m.at(r, c) = sub(m.at(r, c), mul(f, m.at(col, c), q), q);
            }
        }
    }
    return det;
}

FieldMatrix rs_generator(int p, int m, std::uint32_t q) {
    if (!is_prime(q)) throw Error("field size " + std::to_string(q) + " is not prime");
    if (p < 1 || m < 1 || p > m) throw Error("generator needs 1 <= rows <= cols");
    if (q < static_cast<std::uint32_t>(m)) {
        throw FieldTooSmall("field size " + std::to_string(q) +
                            " too small for " + std::to_string(m) +
                            " evaluation points");
    }
    FieldMatrix g(p, m, q);
    for (int c = 0; c < m; ++c) {
        std::uint32_t point = static_cast<std::uint32_t>((c + 1) % q);
        std::uint32_t v = 1 % q;
        for (int r = 0; r < p; ++r) {
            g.at(r, c) = v;
            v = mul(v, point, q);
        }
    }
    return g;
}

LinearSolution solve_linear(const FieldMatrix& a, const std::vector<std::uint32_t>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw Error("right-hand side length does not match row count");
    const std::uint32_t q = a.modulus();
    const int rows = a.rows(), cols = a.cols();

    FieldMatrix m = a;
    std::vector<std::uint32_t> rhs = b;

    std::vector<int> pivot_row_of_col(cols, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < rows; ++r) {
            if (m.at(r, col) != 0) { pivot = r; break; }
        }
        if (pivot < 0) continue;
        if (pivot != rank) {
            for (int c = 0; c < cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
            std::swap(rhs[pivot], rhs[rank]);
        }
        const std::uint32_t inv = inverse(m.at(rank, col), q);
        for (int c = col; c < cols; ++c) m.at(rank, c) = mul(m.at(rank, c), inv, q);
        rhs[rank] = mul(rhs[rank], inv, q);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || m.at(r, col) == 0) continue;
            const std::uint32_t f = m.at(r, col);
            for (int c = col; c < cols; ++c) {
                m.at(r, c) = sub(m.at(r, c), mul(f, m.at(rank, c), q), q);
            }
            rhs[r] = sub(rhs[r], mul(f, rhs[rank], q), q);
        }
        pivot_row_of_col[col] = rank;
        ++rank;
    }

    for (int r = rank; r < rows; ++r) {
        if (rhs[r] != 0) throw Inconsistent("no solution: contradictory equations");
    }

    LinearSolution out;
    out.rank = rank;
    out.solution.assign(cols, 0);
    out.determined.assign(cols, false);
    for (int col = 0; col < cols; ++col) {
        const int pr = pivot_row_of_col[col];
        if (pr < 0) continue;  // free coordinate
        out.solution[col] = rhs[pr];
        // Unique iff the reduced pivot row touches no free column.
        bool unique = true;
        for (int c = 0; c < cols && unique; ++c) {
            if (c != col && m.at(pr, c) != 0 && pivot_row_of_col[c] < 0) unique = false;
        }
        out.determined[col] = unique;
    }
    return out;
}

}  // namespace mpir::gf
