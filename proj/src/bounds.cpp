#include "mpir/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "mpir/errors.hpp"
#include "mpir/stage_planner.hpp"

namespace mpir {

Rational capacity_high(int message_count, int desired_count, int db_count) {
    if (2 * desired_count < message_count)
        throw DomainError("capacity formula needs 2P >= M");
    const long long pn = static_cast<long long>(desired_count) * db_count;
    return Rational(pn, pn + message_count - desired_count);
}

Rational capacity_integer_ratio(int message_count, int desired_count, int db_count) {
    if (message_count % desired_count != 0)
        throw DomainError("integer-ratio capacity needs P | M");
    const int ratio = message_count / desired_count;
    // (1 - 1/N) / (1 - N^-ratio) = N^(ratio-1) (N-1) / (N^ratio - 1)
    const long long nr = ipow(db_count, ratio);
    return Rational(nr / db_count * (db_count - 1), nr - 1);
}

Rational upper_bound(int message_count, int desired_count, int db_count) {
    const int whole = message_count / desired_count;
    Rational denom(0);
    for (int i = 0; i < whole; ++i) denom += Rational(1, ipow(db_count, i));
    const Rational frac_part(message_count % desired_count, desired_count);
    denom += frac_part / Rational(ipow(db_count, whole));
    return Rational(1) / denom;
}

Rational single_message_capacity(int message_count, int db_count) {
    const long long nm = ipow(db_count, message_count);
    return Rational(nm / db_count * (db_count - 1), nm - 1);
}

Rational repetition_delta(int message_count, int desired_count, int db_count) {
    const long long nm = ipow(db_count, message_count);
    return Rational(static_cast<long long>(desired_count - 1) * (db_count - 1), nm - 1);
}

Rational repetition_rate(int message_count, int desired_count, int db_count) {
    const long long nm = ipow(db_count, message_count);
    return Rational(
        (db_count - 1) * (nm / db_count + desired_count - 1), nm - 1);
}

RegionCorners region_corners(int message_count, int desired_count, int db_count) {
    RegionCorners rc;
    rc.single_message = single_message_capacity(message_count, db_count);
    const long long nm = ipow(db_count, message_count);
    rc.delta = Rational(db_count - 1, nm - 1);
    rc.symmetric = Rational(db_count, static_cast<long long>(desired_count) * db_count +
                                           message_count - desired_count);
    if (desired_count == 1) {
        rc.corners.push_back({rc.single_message});
        return rc;
    }
    for (int lead = 0; lead < desired_count; ++lead) {
        std::vector<Rational> corner(desired_count, rc.delta);
        corner[static_cast<std::size_t>(lead)] = rc.single_message;
        rc.corners.push_back(std::move(corner));
    }
    rc.corners.push_back(
        std::vector<Rational>(desired_count, rc.symmetric));
    return rc;
}

Rational best_lower_bound(int message_count, int desired_count, int db_count) {
    if (2 * desired_count >= message_count)
        return capacity_high(message_count, desired_count, db_count);
    return rational_rate(stage_counts(message_count, desired_count, db_count));
}

BoundsReport bounds_report(int message_count, int desired_count, int db_count) {
    BoundsReport r;
    r.message_count = message_count;
    r.desired_count = desired_count;
    r.db_count = db_count;
    r.upper = upper_bound(message_count, desired_count, db_count);
    r.lower = best_lower_bound(message_count, desired_count, db_count);
    if (2 * desired_count >= message_count) {
        r.capacity = capacity_high(message_count, desired_count, db_count);
        r.lower_spectral = r.lower.to_double();
    } else {
        r.lower_spectral = spectral_rate(message_count, desired_count, db_count);
        if (message_count % desired_count == 0)
            r.capacity = capacity_integer_ratio(message_count, desired_count, db_count);
    }
    r.repetition = repetition_rate(message_count, desired_count, db_count);
    r.delta = repetition_delta(message_count, desired_count, db_count);
    r.gap = r.upper - r.lower;
    r.subset_count = binomial(message_count, desired_count);
    return r;
}

namespace {

std::vector<GapRow> gap_surface_impl(int m_lo, int m_hi, int p_lo, int p_hi, int n_lo,
                                     int n_hi, bool parallel) {
    std::vector<GapRow> grid;
    for (int m = m_lo; m <= m_hi; ++m)
        for (int p = p_lo; p <= std::min(p_hi, m); ++p)
            for (int n = n_lo; n <= n_hi; ++n)
                grid.push_back({m, p, n, Rational(0), Rational(0), Rational(0)});

    // Exceptions cannot cross the parallel region; stash the first one.
    std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
        try {
            GapRow& row = grid[static_cast<std::size_t>(i)];
            row.lower = best_lower_bound(row.message_count, row.desired_count, row.db_count);
            row.upper = upper_bound(row.message_count, row.desired_count, row.db_count);
            row.gap = row.upper - row.lower;
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    (void)parallel;
    return grid;
}

}  // namespace

std::vector<GapRow> gap_surface(int m_lo, int m_hi, int p_lo, int p_hi, int n_lo,
                                int n_hi) {
    return gap_surface_impl(m_lo, m_hi, p_lo, p_hi, n_lo, n_hi, true);
}

std::vector<GapRow> gap_surface_serial(int m_lo, int m_hi, int p_lo, int p_hi,
                                       int n_lo, int n_hi) {
    return gap_surface_impl(m_lo, m_hi, p_lo, p_hi, n_lo, n_hi, false);
}

}  // namespace mpir
