#include "mpir/stage_planner.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mpir/errors.hpp"

namespace mpir {

StagePlan stage_counts(int message_count, int desired_count, int db_count) {
    const int m = message_count, p = desired_count, n = db_count;
    if (p < 1 || p > m) throw Error("desired count must lie in [1, M]");
    if (n < 2) throw Error("need at least two databases");

    // y[-P] = (N-1)^(M-P), y[-P+1..-1] = 0, then
    // y[t] = 1/(N-1) * sum_{i=1..P} C(P,i) y[t-i]; alpha_k = y[(M-P)-k].
    // Offset storage: y_[t + P] holds y[t] for t in [-P, M-P-1].
    std::vector<Rational> y(static_cast<std::size_t>(m), Rational(0));
    y[0] = Rational(ipow(n - 1, m - p));
    const Rational scale(1, n - 1);
    for (int t = 0; t <= m - p - 1; ++t) {
        Rational acc(0);
        for (int i = 1; i <= p; ++i) {
            if (t - i + p < 0) break;
            acc += Rational(binomial(p, i)) * y[static_cast<std::size_t>(t - i + p)];
        }
        y[static_cast<std::size_t>(t + p)] = acc * scale;
    }

    StagePlan plan;
    plan.message_count = m;
    plan.desired_count = p;
    plan.db_count = n;
    plan.alpha.resize(m);
    for (int k = 1; k <= m; ++k) {
        const Rational v = y[static_cast<std::size_t>((m - p) - k + p)];
        if (!v.is_integer() || v.num() < 0) {
            throw NonIntegerStageCount("round " + std::to_string(k) +
                                       " stage count " + v.str() +
                                       " is not a non-negative integer");
        }
        plan.alpha[k - 1] = v.num();
    }

    for (int k = 1; k <= m; ++k) {
        plan.downloads_per_db += plan.alpha[k - 1] * binomial(m, k);
        plan.undesired_per_db += plan.alpha[k - 1] * binomial(m - p, k);
    }
    const long long desired_eqs = plan.desired_per_db() * n;
    plan.repeat = p / std::gcd(static_cast<long long>(p), desired_eqs);
    plan.message_length = desired_eqs * plan.repeat / p;
    return plan;
}

Rational rational_rate(const StagePlan& plan) {
    return Rational(plan.downloads_per_db - plan.undesired_per_db,
                    plan.downloads_per_db);
}

namespace {

using cd = std::complex<double>;

// Solve the small dense complex system V gamma = b in place.
std::vector<cd> solve_complex(std::vector<std::vector<cd>> v, std::vector<cd> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(v[r][col]) > std::abs(v[pivot][col])) pivot = r;
        }
        std::swap(v[pivot], v[col]);
        std::swap(b[pivot], b[col]);
        if (std::abs(v[col][col]) == 0.0)
            throw IllConditioned("singular initial-condition system");
        for (int r = col + 1; r < n; ++r) {
            const cd f = v[r][col] / v[col][col];
            for (int c = col; c < n; ++c) v[r][c] -= f * v[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<cd> x(n);
    for (int r = n - 1; r >= 0; --r) {
        cd acc = b[r];
        for (int c = r + 1; c < n; ++c) acc -= v[r][c] * x[c];
        x[r] = acc / v[r][r];
    }
    return x;
}

cd cpow(cd base, int e) {
    cd r(1.0, 0.0);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

SpectralPlan spectral_plan(int message_count, int desired_count, int db_count) {
    const int m = message_count, p = desired_count, n = db_count;
    if (p < 1 || p > m) throw Error("desired count must lie in [1, M]");
    if (n < 2) throw Error("need at least two databases");

    SpectralPlan sp;
    const double root_n = std::pow(static_cast<double>(n), 1.0 / p);
    for (int k = 0; k < p; ++k) {
        const double angle = 2.0 * M_PI * k / p;
        const cd t = std::polar(1.0, angle);
        sp.unit_roots.push_back(t);
        sp.roots.push_back(t / (root_n - t));
    }

    // V[row][i] = r_i^{-P+row}; rhs = ((N-1)^{M-P}, 0, ..., 0).
    std::vector<std::vector<cd>> v(p, std::vector<cd>(p));
    std::vector<cd> rhs(p, cd(0.0, 0.0));
    rhs[0] = cd(static_cast<double>(ipow(n - 1, m - p)), 0.0);
    for (int row = 0; row < p; ++row) {
        for (int i = 0; i < p; ++i) v[row][i] = cpow(1.0 / sp.roots[i], p - row);
    }
    sp.coefficients = solve_complex(v, rhs);

    double residual = 0;
    for (int row = 0; row < p; ++row) {
        cd acc(0.0, 0.0);
        for (int i = 0; i < p; ++i) acc += v[row][i] * sp.coefficients[i];
        residual = std::max(residual, std::abs(acc - rhs[row]));
    }
    const double scale = std::max(1.0, std::abs(rhs[0]));
    if (residual / scale > 1e-8)
        throw IllConditioned("initial-condition residual " + std::to_string(residual));

    cd d(0.0, 0.0), u(0.0, 0.0);
    for (int i = 0; i < p; ++i) {
        const cd r = sp.roots[i];
        const cd common = sp.coefficients[i] * cpow(r, m - p);
        const cd growth = 1.0 + 1.0 / r;
        d += common * (cpow(growth, m) - 1.0);
        u += common * (cpow(growth, m - p) - 1.0);
    }
    sp.download_total = d.real();
    sp.undesired_total = u.real();
    if (std::abs(d.imag()) > 1e-6 * std::max(1.0, std::abs(d.real())) ||
        std::abs(u.imag()) > 1e-6 * std::max(1.0, std::abs(d.real()))) {
        throw IllConditioned("download totals kept a large imaginary part");
    }
    sp.rate = (sp.download_total - sp.undesired_total) / sp.download_total;
    return sp;
}

double spectral_rate(int message_count, int desired_count, int db_count) {
    return spectral_plan(message_count, desired_count, db_count).rate;
}

double spectral_stage_count(const SpectralPlan& sp, int message_count,
                            int desired_count, int round) {
    cd acc(0.0, 0.0);
    const int e = (message_count - desired_count) - round;
    for (std::size_t i = 0; i < sp.roots.size(); ++i) {
        const cd r = sp.roots[i];
        acc += sp.coefficients[i] * (e >= 0 ? cpow(r, e) : 1.0 / cpow(r, -e));
    }
    return acc.real();
}

}  // namespace mpir
