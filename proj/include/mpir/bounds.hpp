#pragma once

#include <optional>
#include <vector>

#include "mpir/rational.hpp"

namespace mpir {

// Closed-form capacities, bounds and baselines. Everything with a rational
// closed form stays in exact arithmetic; only the root-based lower bound
// (spectral_rate) passes through floating point.

// PN / (PN + M - P); exact sum capacity when 2P >= M. Throws DomainError
// outside that regime.
Rational capacity_high(int message_count, int desired_count, int db_count);

// (1 - 1/N) / (1 - N^(-M/P)); exact sum capacity when P divides M.
Rational capacity_integer_ratio(int message_count, int desired_count, int db_count);

// 1 / (sum_{i<floor(M/P)} N^-i + (M/P - floor(M/P)) N^-floor(M/P)).
Rational upper_bound(int message_count, int desired_count, int db_count);

// Single-message capacity C = (1 - 1/N)/(1 - N^-M).
Rational single_message_capacity(int message_count, int db_count);

// Rate of the extra decodable symbols when the single-message scheme runs
// P times: Delta = (P-1)(N-1)/(N^M - 1).
Rational repetition_delta(int message_count, int desired_count, int db_count);

// Repetition baseline (N-1)(N^(M-1)+P-1)/(N^M-1) = C + Delta.
Rational repetition_rate(int message_count, int desired_count, int db_count);

// Achievable-region corner points for 2P >= M, in the P-dimensional rate
// space: the P permutations of (C, delta, ..., delta) plus the symmetric
// point (C^P, ..., C^P) where C^P = N/(PN+M-P) and
// delta = (N-1)/(N^M-1). For P = 1 the region degenerates to the single
// point (C).
struct RegionCorners {
    Rational single_message;  // C
    Rational delta;           // side coordinate of the lopsided corners
    Rational symmetric;       // C^P
    std::vector<std::vector<Rational>> corners;
};

RegionCorners region_corners(int message_count, int desired_count, int db_count);

// Best proven achievable sum rate: the exact capacity when 2P >= M, else
// the multi-round scheme's exact rational rate.
Rational best_lower_bound(int message_count, int desired_count, int db_count);

struct BoundsReport {
    int message_count = 0;
    int desired_count = 0;
    int db_count = 0;
    std::optional<Rational> capacity;   // set when 2P >= M or M/P integer
    Rational upper;                     // always set
    Rational lower;                     // best achievable (exact)
    double lower_spectral = 0.0;        // root-based evaluation of the same bound
    Rational repetition;
    Rational delta;
    Rational gap;                       // upper - lower
    long long subset_count = 0;         // C(M, P)
};

BoundsReport bounds_report(int message_count, int desired_count, int db_count);

// Grid sweep rows behind the gap/rate plots. Parallelizes over the grid.
struct GapRow {
    int message_count;
    int desired_count;
    int db_count;
    Rational lower;
    Rational upper;
    Rational gap;
};

std::vector<GapRow> gap_surface(int m_lo, int m_hi, int p_lo, int p_hi, int n_lo,
                                int n_hi);
std::vector<GapRow> gap_surface_serial(int m_lo, int m_hi, int p_lo, int p_hi,
                                       int n_lo, int n_hi);

}  // namespace mpir
