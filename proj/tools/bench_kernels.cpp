// Wall-clock comparison of the OpenMP kernels against their serial
// reference implementations. The serial functions are the ground truth the
// tests check against; this target shows what the pragmas buy.
//
// Usage: mpir_bench [repeats]

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mpir/bounds.hpp"
#include "mpir/harness.hpp"
#include "mpir/scheme_mds.hpp"
#include "mpir/scheme_rounds.hpp"
#include "mpir/verifier.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

void report(const char* name, double serial, double parallel, bool equal) {
    std::cout << std::left << std::setw(26) << name << std::right << std::fixed
              << std::setprecision(3) << std::setw(9) << serial * 1e3 << " ms"
              << std::setw(9) << parallel * 1e3 << " ms   x"
              << std::setprecision(2) << (parallel > 0 ? serial / parallel : 0.0)
              << (equal ? "" : "   RESULTS DIFFER") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << ", repeats: " << repeats
              << "\n\n";
#else
    std::cout << "built without OpenMP; both columns run serially\n\n";
#endif
    std::cout << std::left << std::setw(26) << "kernel" << std::right
              << std::setw(12) << "serial" << std::setw(12) << "parallel\n";

    // Answer evaluation: a dense synthetic table, roughly what a batch of
    // sweep runs evaluates.
    {
        mpir::ProblemParams params;
        params.message_count = 8;
        params.desired_count = 3;
        params.db_count = 2;
        params.q = 11;
        params.length = 4096;
        const mpir::MessageStore store = mpir::generate_store(params, 3);
        mpir::QueryTable table;
        table.params = params;
        table.per_db.resize(params.db_count);
        mpir::Rng rng(11);
        for (int db = 0; db < params.db_count; ++db) {
            for (int k = 0; k < 50000; ++k) {
                mpir::Query q;
                const int terms = 1 + static_cast<int>(rng.below(7));
                for (int j = 0; j < terms; ++j) {
                    q.terms.push_back(
                        {1 + static_cast<int>(rng.below(params.message_count)),
                         1 + static_cast<long long>(rng.below(params.length)),
                         1 + static_cast<std::uint32_t>(rng.below(params.q - 1))});
                }
                table.per_db[db].push_back(std::move(q));
            }
        }

        mpir::AnswerSet a, b;
        auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < repeats; ++i) a = mpir::answer_serial(table, store);
        const double serial = seconds_since(t0) / repeats;
        t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < repeats; ++i) b = mpir::answer(table, store);
        const double parallel = seconds_since(t0) / repeats;
        report("answer evaluation", serial, parallel, a == b);
    }

    // Statistical privacy sampling.
    {
        const mpir::SchemeBuilder build = [](const std::vector<int>& desired,
                                             std::uint64_t seed) {
            mpir::RunConfig config{"rounds", 4, 2, 2, std::nullopt, {}, seed};
            const mpir::ProblemParams params = mpir::resolve_params(config, "rounds");
            return mpir::rounds_build_queries(params, mpir::RetrievalRequest{desired, seed},
                                              mpir::stage_counts(4, 2, 2));
        };
        const auto subsets = mpir::all_subsets(4, 2);
        auto t0 = std::chrono::steady_clock::now();
        const mpir::AuditReport a =
            mpir::statistical_privacy_check_serial(build, 4, 2, subsets, 2000, 7);
        const double serial = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const mpir::AuditReport b =
            mpir::statistical_privacy_check(build, 4, 2, subsets, 2000, 7);
        const double parallel = seconds_since(t0);
        report("privacy sampling", serial, parallel,
               a.max_tv == b.max_tv && a.statistical_pass == b.statistical_pass);
    }

    // Bound sweep grid.
    {
        std::vector<mpir::GapRow> a, b;
        auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < repeats; ++i) a = mpir::gap_surface_serial(2, 10, 1, 10, 2, 20);
        const double serial = seconds_since(t0) / repeats;
        t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < repeats; ++i) b = mpir::gap_surface(2, 10, 1, 10, 2, 20);
        const double parallel = seconds_since(t0) / repeats;
        bool equal = a.size() == b.size();
        for (std::size_t i = 0; equal && i < a.size(); ++i)
            equal = a[i].gap == b[i].gap && a[i].lower == b[i].lower;
        report("bound sweep", serial, parallel, equal);
    }
    return 0;
}
