#pragma once

// Minimal chi-square machinery for the distribution tests: upper regularized
// incomplete gamma via series / continued fraction, standard recipes.

#include <cmath>
#include <vector>

namespace testutil {

inline double gamma_p_series(double a, double x) {
    double sum = 1.0 / a, term = sum, ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Q(a, x) = 1 - P(a, x).
inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) return 1.0;
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

// Survival p-value of a chi-square statistic with df degrees of freedom.
inline double chi_square_p(double stat, double df) {
    return gamma_q(df / 2.0, stat / 2.0);
}

// Pearson statistic of observed counts against a uniform expectation.
inline double chi_square_uniform_stat(const std::vector<long long>& counts) {
    long long total = 0;
    for (long long c : counts) total += c;
    const double expected = static_cast<double>(total) / counts.size();
    double stat = 0;
    for (long long c : counts) {
        const double d = c - expected;
        stat += d * d / expected;
    }
    return stat;
}

}  // namespace testutil
