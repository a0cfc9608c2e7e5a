#include <doctest.h>

#include <functional>
#include <vector>

#include "mpir/field.hpp"
#include "mpir/rng.hpp"

using namespace mpir;

namespace {

// Leibniz-expansion determinant, the independent route for small minors.
std::uint32_t det_by_expansion(const gf::FieldMatrix& m) {
    const int n = m.rows();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    long long acc = 0;
    // iterate permutations
    std::vector<int> c(n, 0);
    int sign = 1;
    auto term = [&]() {
        long long t = sign;
        for (int i = 0; i < n; ++i) t = t * m.at(i, perm[i]) % m.modulus();
        return t;
    };
    acc += term();
    int i = 0;
    while (i < n) {
        if (c[i] < i) {
            if (i % 2 == 0) std::swap(perm[0], perm[i]);
            else std::swap(perm[c[i]], perm[i]);
            sign = -sign;
            acc += term();
            ++c[i];
            i = 0;
        } else {
            c[i] = 0;
            ++i;
        }
    }
    acc %= static_cast<long long>(m.modulus());
    if (acc < 0) acc += m.modulus();
    return static_cast<std::uint32_t>(acc);
}

gf::FieldMatrix submatrix_cols(const gf::FieldMatrix& g, const std::vector<int>& cols) {
    gf::FieldMatrix s(g.rows(), static_cast<int>(cols.size()), g.modulus());
    for (int r = 0; r < g.rows(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) s.at(r, static_cast<int>(c)) = g.at(r, cols[c]);
    return s;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

TEST_CASE("prime helpers") {
    CHECK(gf::is_prime(2));
    CHECK(gf::is_prime(7919));
    CHECK(!gf::is_prime(1));
    CHECK(!gf::is_prime(9));
    CHECK(gf::next_prime_above(3) == 5);
    CHECK(gf::next_prime_above(5) == 7);
    CHECK(gf::next_prime_above(7) == 11);
}

TEST_CASE("field inverse") {
    CHECK(gf::inverse(1, 5) == 1);
    CHECK(gf::inverse(2, 5) == 3);
    CHECK(gf::inverse(4, 7) == 2);
    CHECK_THROWS_AS(gf::inverse(0, 5), ZeroInverse);

    // involution on the multiplicative group
    for (std::uint32_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        for (std::uint32_t a = 1; a < q; ++a) {
            CHECK(gf::mul(a, gf::inverse(a, q), q) == 1);
            CHECK(gf::inverse(gf::inverse(a, q), q) == a);
        }
    }
}

TEST_CASE("generator matrix values") {
    // the worked 3x5 example over GF(5); the final point is 5 = 0 mod 5
    const gf::FieldMatrix g = gf::rs_generator(3, 5, 5);
    const std::uint32_t expect[3][5] = {
        {1, 1, 1, 1, 1}, {1, 2, 3, 4, 0}, {1, 4, 4, 1, 0}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 5; ++c) CHECK(g.at(r, c) == expect[r][c]);

    const gf::FieldMatrix ones = gf::rs_generator(1, 3, 5);
    for (int c = 0; c < 3; ++c) CHECK(ones.at(0, c) == 1);

    CHECK_THROWS_AS(gf::rs_generator(2, 5, 3), FieldTooSmall);
    CHECK_THROWS_AS(gf::rs_generator(2, 4, 4), Error);  // not prime
}

TEST_CASE("generator matrices are MDS") {
    // every 2x2 minor of the 2x4 generator over GF(5), by hand
    const gf::FieldMatrix g24 = gf::rs_generator(2, 4, 5);
    for_each_subset(4, 2, [&](const std::vector<int>& cols) {
        const gf::FieldMatrix s = submatrix_cols(g24, cols);
        const std::uint32_t ad = gf::mul(s.at(0, 0), s.at(1, 1), 5);
        const std::uint32_t bc = gf::mul(s.at(0, 1), s.at(1, 0), 5);
        CHECK(ad != bc);
    });

    // exhaustive maximal minors for M <= 8, elimination vs expansion
    for (int m = 2; m <= 8; ++m) {
        for (int p = 1; p <= m && p <= 4; ++p) {
            const std::uint32_t q = gf::next_prime_above(static_cast<std::uint32_t>(m));
            const gf::FieldMatrix g = gf::rs_generator(p, m, q);
            for_each_subset(m, p, [&](const std::vector<int>& cols) {
                const gf::FieldMatrix s = submatrix_cols(g, cols);
                const std::uint32_t d = gf::determinant(s);
                CHECK(d != 0);
                CHECK(d == det_by_expansion(s));
            });
        }
    }
    // q = M is the smallest field that still keeps the points distinct
    const gf::FieldMatrix g35 = gf::rs_generator(3, 5, 5);
    for_each_subset(5, 3, [&](const std::vector<int>& cols) {
        CHECK(gf::determinant(submatrix_cols(g35, cols)) != 0);
    });
}

TEST_CASE("solve_linear basics") {
    SUBCASE("identity") {
        gf::FieldMatrix eye(3, 3, 7);
        for (int i = 0; i < 3; ++i) eye.at(i, i) = 1;
        const auto sol = gf::solve_linear(eye, {4, 5, 6});
        CHECK(sol.solution == std::vector<std::uint32_t>{4, 5, 6});
        for (bool d : sol.determined) CHECK(d);
    }
    SUBCASE("2x2 mixture") {
        // a + b = s1, 2a + b = s2 over GF(5) with a=3, b=4
        gf::FieldMatrix a(2, 2, 5);
        a.at(0, 0) = 1; a.at(0, 1) = 1;
        a.at(1, 0) = 2; a.at(1, 1) = 1;
        const auto sol = gf::solve_linear(a, {2, 0});
        CHECK(sol.determined == std::vector<bool>{true, true});
        CHECK(sol.solution == std::vector<std::uint32_t>{3, 4});
    }
    SUBCASE("underdetermined") {
        gf::FieldMatrix a(1, 2, 5);
        a.at(0, 0) = 1; a.at(0, 1) = 1;
        const auto sol = gf::solve_linear(a, {3});
        CHECK(sol.determined == std::vector<bool>{false, false});
        CHECK(sol.rank == 1);
    }
    SUBCASE("inconsistent") {
        gf::FieldMatrix a(2, 1, 5);
        a.at(0, 0) = 1; a.at(1, 0) = 1;
        CHECK_THROWS_AS(gf::solve_linear(a, {1, 2}), Inconsistent);
    }
}

TEST_CASE("solve_linear agrees with brute-force enumeration") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t q = std::vector<std::uint32_t>{2, 3, 5}[trial % 3];
        const int cols = 1 + static_cast<int>(rng.below(3));
        const int rows = 1 + static_cast<int>(rng.below(4));
        gf::FieldMatrix a(rows, cols, q);
        std::vector<std::uint32_t> b(rows);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) a.at(r, c) = static_cast<std::uint32_t>(rng.below(q));
            b[r] = static_cast<std::uint32_t>(rng.below(q));
        }

        // enumerate all q^cols assignments
        std::vector<std::vector<std::uint32_t>> solutions;
        long long total = 1;
        for (int c = 0; c < cols; ++c) total *= q;
        for (long long code = 0; code < total; ++code) {
            std::vector<std::uint32_t> x(cols);
            long long v = code;
            for (int c = 0; c < cols; ++c) { x[c] = static_cast<std::uint32_t>(v % q); v /= q; }
            bool ok = true;
            for (int r = 0; r < rows && ok; ++r) {
                std::uint32_t acc = 0;
                for (int c = 0; c < cols; ++c) acc = gf::add(acc, gf::mul(a.at(r, c), x[c], q), q);
                ok = acc == b[r];
            }
            if (ok) solutions.push_back(std::move(x));
        }

        if (solutions.empty()) {
            CHECK_THROWS_AS(gf::solve_linear(a, b), Inconsistent);
            continue;
        }
        const auto sol = gf::solve_linear(a, b);
        for (int c = 0; c < cols; ++c) {
            bool constant = true;
            for (const auto& s : solutions)
                if (s[c] != solutions[0][c]) constant = false;
            CHECK(sol.determined[c] == constant);
            if (constant) CHECK(sol.solution[c] == solutions[0][c]);
        }
    }
}
