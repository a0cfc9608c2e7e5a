#include <cmath>
#include <exception>
#include <sstream>

#include "mpir/errors.hpp"
#include "mpir/harness.hpp"
#include "mpir/scheme_mds.hpp"
#include "mpir/scheme_rounds.hpp"
#include "mpir/verifier.hpp"

namespace mpir {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

RateReport run_once(const std::string& scheme, int m, int p, int n, std::uint64_t seed) {
    RunConfig config;
    config.scheme = scheme;
    config.message_count = m;
    config.desired_count = p;
    config.db_count = n;
    config.seed = seed;
    return cmd_run(config);
}

// Criterion 1: the coded scheme reproduces the worked examples exactly.
CriterionResult scheme_a_exactness() {
    Check c;
    struct Case {
        int m, p, n;
        Rational rate;
        long long downloads;
    };
    const Case cases[] = {
        {3, 2, 2, Rational(4, 5), 10},
        {5, 3, 2, Rational(3, 4), 16},
        {4, 2, 3, Rational(3, 4), 24},
    };
    for (const auto& t : cases) {
        const RateReport r = run_once("mds", t.m, t.p, t.n, 7);
        const std::string tag = "(" + std::to_string(t.m) + "," + std::to_string(t.p) +
                                "," + std::to_string(t.n) + ")";
        c.expect(r.total_downloads == t.downloads, tag + " downloads " +
                                                       std::to_string(r.total_downloads));
        c.expect(r.measured == t.rate, tag + " rate " + r.measured.str());
        c.expect(r.measured == mds_rate(t.m, t.p, t.n), tag + " formula mismatch");
        c.expect(r.decode_matches_store && r.oracle_matches, tag + " decode failed");
    }
    return {1, "scheme-a exactness", c.ok, c.detail.str()};
}

// Criterion 2: stage plans for the worked examples, exact integers.
CriterionResult scheme_b_stage_plans() {
    Check c;
    struct Case {
        int m, p, n;
        std::vector<long long> alpha;
    };
    const Case cases[] = {
        {5, 2, 2, {5, 2, 1, 0, 1}},
        {4, 2, 2, {2, 1, 0, 1}},
        {5, 2, 3, {6, 4, 4, 0, 8}},
        {7, 3, 3, {67, 30, 12, 8, 0, 0, 16}},
    };
    for (const auto& t : cases) {
        const StagePlan plan = stage_counts(t.m, t.p, t.n);
        std::ostringstream tag;
        tag << "(" << t.m << "," << t.p << "," << t.n << ")";
        if (plan.alpha != t.alpha) {
            std::ostringstream got;
            for (long long a : plan.alpha) got << a << ' ';
            c.expect(false, tag.str() + " alpha = " + got.str());
        }
    }
    return {2, "scheme-b stage plans", c.ok, c.detail.str()};
}

// Criterion 3: multi-round end-to-end counts and rates, decode oracle-checked.
CriterionResult scheme_b_exactness() {
    Check c;
    struct Case {
        int m, p, n;
        long long desired, downloads;
        Rational rate;
    };
    const Case cases[] = {
        {5, 2, 2, 68, 112, Rational(17, 28)},
        {4, 2, 2, 20, 30, Rational(2, 3)},
        {5, 2, 3, 252, 354, Rational(42, 59)},
        {7, 3, 3, 3933, 5445, Rational(437, 605)},
    };
    for (const auto& t : cases) {
        const RateReport r = run_once("rounds", t.m, t.p, t.n, 11);
        const std::string tag = "(" + std::to_string(t.m) + "," + std::to_string(t.p) +
                                "," + std::to_string(t.n) + ")";
        c.expect(r.desired_symbols == t.desired,
                 tag + " desired " + std::to_string(r.desired_symbols));
        c.expect(r.total_downloads == t.downloads,
                 tag + " downloads " + std::to_string(r.total_downloads));
        c.expect(r.measured == t.rate, tag + " rate " + r.measured.str());
        c.expect(r.decode_matches_store && r.oracle_matches, tag + " decode failed");
    }
    return {3, "scheme-b exactness", c.ok, c.detail.str()};
}

// Criterion 4: bound values and gaps on the worked examples.
CriterionResult bounds_table() {
    Check c;
    struct Case {
        int m, p, n;
        Rational upper, gap;
    };
    const Case cases[] = {
        {5, 2, 2, Rational(8, 13), Rational(3, 364)},
        {5, 2, 3, Rational(18, 25), Rational(12, 1475)},
        {7, 3, 3, Rational(27, 37), Rational(166, 22385)},
    };
    for (const auto& t : cases) {
        const std::string tag = "(" + std::to_string(t.m) + "," + std::to_string(t.p) +
                                "," + std::to_string(t.n) + ")";
        const Rational upper = upper_bound(t.m, t.p, t.n);
        c.expect(upper == t.upper, tag + " upper " + upper.str());
        const Rational gap = upper - best_lower_bound(t.m, t.p, t.n);
        c.expect(gap == t.gap, tag + " gap " + gap.str());
        const double spectral_gap = upper.to_double() - spectral_rate(t.m, t.p, t.n);
        c.expect(std::abs(spectral_gap - t.gap.to_double()) < 1e-9,
                 tag + " spectral gap " + std::to_string(spectral_gap));
    }
    return {4, "bounds table", c.ok, c.detail.str()};
}

// Criterion 5: global gap behavior over the full grid.
CriterionResult global_gap() {
    Check c;
    const Rational worst(3, 364);
    const auto rows = gap_surface(2, 10, 1, 10, 2, 20);
    bool attained = false;
    for (const auto& row : rows) {
        std::ostringstream tag;
        tag << "(" << row.message_count << "," << row.desired_count << ","
            << row.db_count << ")";
        c.expect(row.gap <= worst, tag.str() + " gap " + row.gap.str() + " > 3/364");
        if (2 * row.desired_count >= row.message_count ||
            row.message_count % row.desired_count == 0) {
            c.expect(row.gap == Rational(0), tag.str() + " expected zero gap");
        }
        if (row.message_count == 5 && row.desired_count == 2 && row.db_count == 2) {
            attained = row.gap == worst;
        }
    }
    c.expect(attained, "maximum not attained at (5,2,2)");
    return {5, "global gap property", c.ok, c.detail.str()};
}

// Criterion 6: the repetition baseline is strictly below capacity on the
// whole 2P >= M grid. This is known to fail at the degenerate M = 2
// boundary, where repeating the single-message scheme once (P = 1) is the
// optimal scheme itself and P = M = 2 drives both rates to exactly 1; the
// strictness polynomial is identically zero at M = 2. The check runs the
// grid as stated and reports those equalities rather than excluding them.
CriterionResult repetition_strictness() {
    Check c;
    int boundary_equalities = 0;
    for (int m = 2; m <= 10; ++m) {
        for (int p = (m + 1) / 2; p <= m; ++p) {
            for (int n = 2; n <= 10; ++n) {
                if (2 * p < m) continue;
                const Rational diff =
                    capacity_high(m, p, n) - repetition_rate(m, p, n);
                if (diff > Rational(0)) continue;
                if (m == 2 && diff == Rational(0)) {
                    ++boundary_equalities;
                    continue;
                }
                std::ostringstream tag;
                tag << "(" << m << "," << p << "," << n << ") diff " << diff.str();
                c.expect(false, tag.str());
            }
        }
    }
    c.expect(boundary_equalities == 0,
             std::to_string(boundary_equalities) +
                 " grid points at M=2 have capacity == repetition rate exactly "
                 "(repeating the single-message scheme once is that optimum; "
                 "strict inequality holds for all 3 <= M <= 10)");
    c.expect(repetition_rate(3, 2, 2) == Rational(5, 7), "rep(3,2,2)");
    c.expect(capacity_high(3, 2, 2) == Rational(4, 5), "cap(3,2,2)");
    c.expect(repetition_rate(5, 3, 2) == Rational(18, 31), "rep(5,3,2)");
    c.expect(capacity_high(5, 3, 2) == Rational(3, 4), "cap(5,3,2)");
    c.expect(repetition_rate(4, 2, 3) == Rational(7, 10), "rep(4,2,3)");
    c.expect(capacity_high(4, 2, 3) == Rational(3, 4), "cap(4,2,3)");
    return {6, "repetition strictly sub-optimal", c.ok, c.detail.str()};
}

// Criterion 7: root-based and recurrence-based rates agree.
CriterionResult spectral_equivalence() {
    Check c;
    double worst = 0;
    for (int m = 2; m <= 12; ++m) {
        for (int p = 1; 2 * p <= m; ++p) {
            for (int n = 2; n <= 10; ++n) {
                const double spec = spectral_rate(m, p, n);
                const double rat = rational_rate(stage_counts(m, p, n)).to_double();
                worst = std::max(worst, std::abs(spec - rat));
            }
        }
    }
    c.expect(worst < 1e-9, "max |spectral - rational| = " + std::to_string(worst));
    return {7, "spectral/rational equivalence", c.ok, c.detail.str()};
}

// Criterion 8: the multi-round scheme collapses to the single-message one.
CriterionResult single_message_reduction() {
    Check c;
    for (int m = 2; m <= 6; ++m) {
        for (int n = 2; n <= 4; ++n) {
            const std::string tag = "(" + std::to_string(m) + ",1," + std::to_string(n) + ")";
            const StagePlan plan = stage_counts(m, 1, n);
            for (int k = 1; k <= m; ++k) {
                c.expect(plan.alpha[static_cast<std::size_t>(k - 1)] == ipow(n - 1, k - 1),
                         tag + " alpha_" + std::to_string(k));
            }
            const RateReport r = run_once("rounds", m, 1, n, 5);
            c.expect(r.measured == single_message_capacity(m, n),
                     tag + " rate " + r.measured.str());
            c.expect(r.decode_matches_store && r.oracle_matches, tag + " decode failed");
        }
    }
    c.expect(single_message_capacity(3, 2) == Rational(4, 7), "(3,1,2) != 4/7");
    return {8, "single-message reduction", c.ok, c.detail.str()};
}

// Criterion 9: scheme decoders equal the elimination oracle, 100 seeds per
// configuration.
CriterionResult oracle_equivalence() {
    Check c;
    struct Case {
        const char* scheme;
        int m, p, n;
    };
    std::vector<Case> cases = {
        {"mds", 3, 2, 2}, {"mds", 5, 3, 2}, {"mds", 4, 2, 3},
        {"rounds", 5, 2, 2}, {"rounds", 4, 2, 2}, {"rounds", 5, 2, 3},
        {"rounds", 7, 3, 3},
    };
    for (int m = 2; m <= 6; ++m)
        for (int n = 2; n <= 4; ++n) cases.push_back({"rounds", m, 1, n});

    for (const auto& t : cases) {
        long long mismatches = 0;
        std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : mismatches)
#endif
        for (int seed = 1; seed <= 100; ++seed) {
            try {
                const RateReport r = run_once(t.scheme, t.m, t.p, t.n,
                                              static_cast<std::uint64_t>(seed));
                if (!r.oracle_matches || !r.decode_matches_store) ++mismatches;
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        std::ostringstream tag;
        tag << t.scheme << "(" << t.m << "," << t.p << "," << t.n << ") mismatches "
            << mismatches;
        c.expect(mismatches == 0, tag.str());
    }
    return {9, "oracle equivalence", c.ok, c.detail.str()};
}

// Criterion 10: the privacy auditor accepts both schemes and rejects both
// negative controls.
CriterionResult privacy_audit() {
    Check c;
    struct Case {
        const char* scheme;
        int m, p, n;
    };
    const Case structural_cases[] = {
        {"mds", 3, 2, 2}, {"mds", 5, 3, 2}, {"mds", 4, 2, 3},
        {"rounds", 5, 2, 2}, {"rounds", 4, 2, 2}, {"rounds", 5, 2, 3},
    };
    for (const auto& t : structural_cases) {
        const SchemeBuilder build = [&t](const std::vector<int>& desired,
                                         std::uint64_t seed) {
            RunConfig config;
            config.scheme = t.scheme;
            config.message_count = t.m;
            config.desired_count = t.p;
            config.db_count = t.n;
            config.seed = seed;
            const ProblemParams params = resolve_params(config, t.scheme);
            RetrievalRequest request{desired, seed};
            if (std::string(t.scheme) == "mds")
                return mds_build_queries(params, request);
            return rounds_build_queries(params, request,
                                        stage_counts(t.m, t.p, t.n));
        };
        const AuditReport audit = structural_privacy_check(build, t.m, t.p, 17);
        std::ostringstream tag;
        tag << t.scheme << "(" << t.m << "," << t.p << "," << t.n << ")";
        c.expect(audit.structural_pass, tag.str() + " structural audit failed");
    }

    // Statistical pass on the two small configurations.
    {
        const SchemeBuilder build_mds = [](const std::vector<int>& desired,
                                           std::uint64_t seed) {
            RunConfig config{"mds", 3, 2, 2, std::nullopt, {}, seed};
            const ProblemParams params = resolve_params(config, "mds");
            return mds_build_queries(params, RetrievalRequest{desired, seed});
        };
        const AuditReport a = statistical_privacy_check(build_mds, 3, 2,
                                                        all_subsets(3, 2), 10000, 23);
        c.expect(a.statistical_pass,
                 "mds(3,2,2) statistical tv " + std::to_string(a.max_tv));

        const SchemeBuilder build_rounds = [](const std::vector<int>& desired,
                                              std::uint64_t seed) {
            RunConfig config{"rounds", 4, 2, 2, std::nullopt, {}, seed};
            const ProblemParams params = resolve_params(config, "rounds");
            return rounds_build_queries(params, RetrievalRequest{desired, seed},
                                        stage_counts(4, 2, 2));
        };
        const AuditReport b = statistical_privacy_check(build_rounds, 4, 2,
                                                        all_subsets(4, 2), 10000, 29);
        c.expect(b.statistical_pass,
                 "rounds(4,2,2) statistical tv " + std::to_string(b.max_tv));
    }

    // Negative controls must fail both checks.
    {
        ProblemParams params;
        params.message_count = 3;
        params.desired_count = 2;
        params.db_count = 2;
        params.q = 5;
        params.length = 4;
        const SchemeBuilder desired_only = [params](const std::vector<int>& desired,
                                                    std::uint64_t seed) {
            return control_desired_only_table(params, RetrievalRequest{desired, seed});
        };
        const SchemeBuilder asymmetric = [params](const std::vector<int>& desired,
                                                  std::uint64_t seed) {
            return control_asymmetric_table(params, RetrievalRequest{desired, seed});
        };
        c.expect(!structural_privacy_check(desired_only, 3, 2, 17).structural_pass,
                 "desired-only control passed the structural audit");
        c.expect(!structural_privacy_check(asymmetric, 3, 2, 17).structural_pass,
                 "asymmetric control passed the structural audit");
        c.expect(!statistical_privacy_check(desired_only, 3, 2, all_subsets(3, 2),
                                            1000, 23)
                      .statistical_pass,
                 "desired-only control passed the statistical audit");
        c.expect(!statistical_privacy_check(asymmetric, 3, 2, all_subsets(3, 2),
                                            1000, 23)
                      .statistical_pass,
                 "asymmetric control passed the statistical audit");
    }
    return {10, "privacy audit", c.ok, c.detail.str()};
}

// Criterion 11: achievable-region corner points.
CriterionResult region_corner_points() {
    Check c;
    const RegionCorners rc = region_corners(3, 2, 2);
    c.expect(rc.single_message == Rational(4, 7), "C = " + rc.single_message.str());
    c.expect(rc.delta == Rational(1, 7), "delta = " + rc.delta.str());
    c.expect(rc.symmetric == Rational(2, 5), "C^P = " + rc.symmetric.str());
    const std::vector<std::vector<Rational>> expected = {
        {Rational(4, 7), Rational(1, 7)},
        {Rational(1, 7), Rational(4, 7)},
        {Rational(2, 5), Rational(2, 5)},
    };
    c.expect(rc.corners == expected, "corner list mismatch");
    return {11, "region corners", c.ok, c.detail.str()};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter) {
    struct Entry {
        int id;
        const char* name;
        CriterionResult (*fn)();
    };
    const Entry entries[] = {
        {1, "scheme-a exactness", scheme_a_exactness},
        {2, "scheme-b stage plans", scheme_b_stage_plans},
        {3, "scheme-b exactness", scheme_b_exactness},
        {4, "bounds table", bounds_table},
        {5, "global gap property", global_gap},
        {6, "repetition strictly sub-optimal", repetition_strictness},
        {7, "spectral/rational equivalence", spectral_equivalence},
        {8, "single-message reduction", single_message_reduction},
        {9, "oracle equivalence", oracle_equivalence},
        {10, "privacy audit", privacy_audit},
        {11, "region corners", region_corner_points},
    };
    std::vector<CriterionResult> results;
    for (const auto& entry : entries) {
        if (!filter.empty() &&
            std::string(entry.name).find(filter) == std::string::npos) {
            continue;
        }
        CriterionResult r;
        try {
            r = entry.fn();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.id = entry.id;
        r.name = entry.name;
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace mpir
