#pragma once

#include <complex>
#include <vector>

#include "mpir/rational.hpp"

namespace mpir {

// Per-round stage counts for the multi-round scheme, plus the download and
// side-information totals they imply.
//
// alpha[k-1] is the number of stages in round k (a round-k stage exhausts
// all C(M,k) k-subsets once). The counts obey the backward recurrence
//   alpha_k = 1/(N-1) * sum_{i=1..P} C(P,i) * alpha_{k+i}
// anchored at alpha_M = (N-1)^(M-P) with the P-1 rounds before the last
// suppressed.
struct StagePlan {
    int message_count = 0;
    int desired_count = 0;
    int db_count = 0;
    std::vector<long long> alpha;  // size M, 1-based round k -> alpha[k-1]
    long long downloads_per_db = 0;       // sum_k alpha_k C(M,k)
    long long undesired_per_db = 0;       // sum_k alpha_k C(M-P,k)
    // Whole plans needed so each desired message ends with the same number
    // of fresh symbols: P / gcd(P, N (D-U)). 1 for every worked example.
    long long repeat = 1;
    long long message_length = 0;         // L = repeat * N (D-U) / P

    long long desired_per_db() const { return downloads_per_db - undesired_per_db; }
    long long stages_of_round(int k) const {
        return alpha[static_cast<std::size_t>(k - 1)] * repeat;
    }
    long long total_downloads() const { return downloads_per_db * repeat * db_count; }
    long long total_desired() const { return desired_per_db() * repeat * db_count; }
    long long queries_per_db() const { return downloads_per_db * repeat; }
    long long undesired_queries_per_db() const { return undesired_per_db * repeat; }
};

// Evaluates the recurrence in exact rationals (denominators are powers of
// N-1) and verifies every count is a non-negative integer; a non-integer
// would be a planner bug and throws NonIntegerStageCount.
StagePlan stage_counts(int message_count, int desired_count, int db_count);

// Achieved rate (D-U)/D of a plan, in lowest terms.
Rational rational_rate(const StagePlan& plan);

// Closed-form cross-check of the recurrence through the characteristic
// roots of N r^P = (r+1)^P and the initial-condition system for gamma.
struct SpectralPlan {
    std::vector<std::complex<double>> roots;        // r_1..r_P
    std::vector<std::complex<double>> unit_roots;   // t_k on the unit circle
    std::vector<std::complex<double>> coefficients; // gamma_1..gamma_P
    double download_total = 0;   // D per database
    double undesired_total = 0;  // U per database
    double rate = 0;             // (D-U)/D
};

SpectralPlan spectral_plan(int message_count, int desired_count, int db_count);

// Rate from the root/coefficient form; agrees with rational_rate(stage_counts)
// to ~1e-12. Throws IllConditioned if the gamma system residual is large.
double spectral_rate(int message_count, int desired_count, int db_count);

// Stage count of round k reconstructed from the spectral form (cross-check).
double spectral_stage_count(const SpectralPlan& sp, int message_count,
                            int desired_count, int round);

}  // namespace mpir
