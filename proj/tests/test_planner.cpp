#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "mpir/errors.hpp"
#include "mpir/stage_planner.hpp"

using namespace mpir;

TEST_CASE("stage counts match the worked examples") {
    CHECK(stage_counts(5, 2, 2).alpha == std::vector<long long>{5, 2, 1, 0, 1});
    CHECK(stage_counts(4, 2, 2).alpha == std::vector<long long>{2, 1, 0, 1});
    CHECK(stage_counts(5, 2, 3).alpha == std::vector<long long>{6, 4, 4, 0, 8});
    CHECK(stage_counts(7, 3, 3).alpha ==
          std::vector<long long>{67, 30, 12, 8, 0, 0, 16});
}

TEST_CASE("single-desired plans are geometric") {
    for (int m = 2; m <= 8; ++m) {
        for (int n = 2; n <= 5; ++n) {
            const StagePlan plan = stage_counts(m, 1, n);
            for (int k = 1; k <= m; ++k)
                CHECK(plan.alpha[k - 1] == ipow(n - 1, k - 1));
        }
    }
}

TEST_CASE("download totals and message length") {
    const StagePlan p522 = stage_counts(5, 2, 2);
    CHECK(p522.downloads_per_db == 56);
    CHECK(p522.undesired_per_db == 22);
    CHECK(p522.message_length == 34);
    CHECK(rational_rate(p522) == Rational(17, 28));

    const StagePlan p733 = stage_counts(7, 3, 3);
    CHECK(p733.downloads_per_db == 1815);
    CHECK(p733.total_downloads() == 5445);
    CHECK(rational_rate(p733) == Rational(437, 605));
    CHECK(p733.repeat == 1);

    // no uniform split of the desired equations over P = 3 messages here;
    // the plan runs three times so each message gets the same length
    const StagePlan p632 = stage_counts(6, 3, 2);
    CHECK(p632.repeat == 3);
    CHECK(p632.message_length == 184);
    CHECK(rational_rate(p632) == Rational(2, 3));

    CHECK(rational_rate(stage_counts(5, 2, 3)) == Rational(42, 59));
    CHECK(rational_rate(stage_counts(2, 1, 2)) == Rational(2, 3));
}

TEST_CASE("counts are integral and conserve side information") {
    for (int m = 2; m <= 10; ++m) {
        for (int p = 1; p <= m; ++p) {
            for (int n = 2; n <= 6; ++n) {
                const StagePlan plan = stage_counts(m, p, n);
                CHECK(plan.alpha[m - 1] == ipow(n - 1, m - p));
                for (int k = m - p + 1; k < m; ++k) CHECK(plan.alpha[k - 1] == 0);
                // consumed stage-equivalents = (N-1) * produced stages
                for (int k = 1; k + p <= m; ++k) {
                    long long consumed = 0;
                    for (int i = 1; i <= p; ++i)
                        consumed += binomial(p, i) * plan.alpha[k + i - 1];
                    CHECK(consumed == (n - 1) * plan.alpha[k - 1]);
                }
            }
        }
    }
}

TEST_CASE("spectral form agrees with the exact recurrence") {
    CHECK(std::abs(spectral_rate(5, 2, 2) - 17.0 / 28.0) < 1e-12);
    CHECK(std::abs(spectral_rate(4, 2, 2) - 2.0 / 3.0) < 1e-12);
    // integer M/P collapses to the single-message form with M/P messages
    CHECK(std::abs(spectral_rate(6, 3, 2) - (0.5 / (1.0 - 0.25))) < 1e-12);

    double worst = 0;
    for (int m = 2; m <= 12; ++m)
        for (int p = 1; 2 * p <= m; ++p)
            for (int n = 2; n <= 10; ++n)
                worst = std::max(worst,
                                 std::abs(spectral_rate(m, p, n) -
                                          rational_rate(stage_counts(m, p, n)).to_double()));
    CHECK(worst < 1e-9);
}

TEST_CASE("spectral stage counts reproduce the integer plan") {
    const std::vector<std::array<int, 3>> cases = {
        {5, 2, 2}, {5, 2, 3}, {7, 3, 3}, {6, 2, 4}};
    for (const auto& [m, p, n] : cases) {
        const StagePlan plan = stage_counts(m, p, n);
        const SpectralPlan sp = spectral_plan(m, p, n);
        for (int k = 1; k <= m; ++k) {
            const double y = spectral_stage_count(sp, m, p, k);
            CHECK(std::abs(y - static_cast<double>(plan.alpha[k - 1])) < 1e-6);
        }
    }
}

TEST_CASE("single root for P = 1") {
    const SpectralPlan sp = spectral_plan(4, 1, 3);
    REQUIRE(sp.roots.size() == 1);
    CHECK(std::abs(sp.unit_roots[0].real() - 1.0) < 1e-12);
    CHECK(std::abs(sp.roots[0].real() - 0.5) < 1e-12);  // 1/(N-1)
    CHECK(std::abs(sp.roots[0].imag()) < 1e-12);
}

TEST_CASE("planner rejects bad dimensions") {
    CHECK_THROWS_AS(stage_counts(3, 0, 2), Error);
    CHECK_THROWS_AS(stage_counts(3, 4, 2), Error);
    CHECK_THROWS_AS(stage_counts(3, 1, 1), Error);
}
