// Command-line front end: plan / run / bounds / audit / table / verify.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpir/errors.hpp"
#include "mpir/harness.hpp"
#include "mpir/scheme_mds.hpp"
#include "mpir/scheme_rounds.hpp"
#include "mpir/table_io.hpp"
#include "mpir/verifier.hpp"

namespace {

std::uint64_t default_seed() {
    if (const char* env = std::getenv("MPIR_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1;
}

std::vector<int> parse_pset(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

void print_rate_report(const mpir::RateReport& r, const std::string& format) {
    if (format == "csv") {
        std::cout << "scheme,M,P,N,q,L,desired_symbols,total_downloads,per_db,rate\n"
                  << r.scheme << ',' << r.params.message_count << ','
                  << r.params.desired_count << ',' << r.params.db_count << ','
                  << r.params.q << ',' << r.params.length << ',' << r.desired_symbols
                  << ',' << r.total_downloads << ',' << r.per_db_downloads << ','
                  << r.measured.str() << '\n';
        return;
    }
    std::cout << "scheme            " << r.scheme << "\n"
              << "parameters        M=" << r.params.message_count
              << " P=" << r.params.desired_count << " N=" << r.params.db_count
              << " q=" << r.params.q << " L=" << r.params.length << "\n";
    std::cout << "desired set       {";
    for (std::size_t i = 0; i < r.desired.size(); ++i)
        std::cout << (i ? "," : "") << r.desired[i];
    std::cout << "}\n";
    std::cout << "downloads         " << r.total_downloads << " total, "
              << r.per_db_downloads << " per database\n"
              << "desired symbols   " << r.desired_symbols << "\n"
              << "measured rate     " << r.measured.str() << " ("
              << std::setprecision(12) << r.measured.to_double() << ")\n"
              << "closed-form rate  " << r.expected.str() << "\n"
              << "decode vs store   " << (r.decode_matches_store ? "match" : "MISMATCH")
              << "\n"
              << "decode vs oracle  " << (r.oracle_matches ? "match" : "MISMATCH")
              << "\n";
}

int run_command(const mpir::RunConfig& config, const std::string& format,
                const std::string& emit_path) {
    const mpir::RateReport report = mpir::cmd_run(config);
    print_rate_report(report, format);
    if (!emit_path.empty()) {
        const std::string text = mpir::emit_table_text(report.table);
        if (emit_path == "-") {
            std::cout << text;
        } else {
            std::ofstream out(emit_path);
            out << text;
        }
    }
    const bool ok = report.decode_matches_store && report.oracle_matches &&
                    report.measured == report.expected;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-message private retrieval: schemes, bounds, verification"};
    app.require_subcommand(1);

    std::string scheme = "auto";
    int m = 0, p = 0, n = 0;
    std::uint64_t seed = default_seed();
    std::string pset, format = "text", emit_path, out_path, filter;
    std::uint32_t field = 0;
    long long samples = 0;

    auto add_mpn = [&](CLI::App* cmd) {
        cmd->add_option("-M,--messages", m, "stored messages")->required();
        cmd->add_option("-P,--desired", p, "retrieved messages")->required();
        cmd->add_option("-N,--databases", n, "replicated databases")->required();
    };

    // plan
    CLI::App* plan = app.add_subcommand("plan", "stage counts and totals for the multi-round scheme");
    add_mpn(plan);
    plan->add_option("--format", format, "text|csv");

    // run
    CLI::App* run = app.add_subcommand("run", "build, answer, decode and verify one retrieval");
    add_mpn(run);
    run->add_option("--scheme", scheme, "mds|rounds|auto");
    run->add_option("--q", field, "field size override (prime)");
    run->add_option("--pset", pset, "desired subset, e.g. 1,3");
    run->add_option("--seed", seed, "randomness seed (default $MPIR_SEED or 1)");
    run->add_option("--emit-table", emit_path, "write the query table ('-' = stdout)");
    run->add_option("--format", format, "text|csv");

    // bounds
    CLI::App* bounds = app.add_subcommand("bounds", "capacities, bounds and baselines");
    bounds->add_option("-M,--messages", m, "stored messages");
    bounds->add_option("-P,--desired", p, "retrieved messages");
    bounds->add_option("-N,--databases", n, "replicated databases");
    bool sweep = false;
    std::vector<int> m_range{2, 10}, p_range{1, 10}, n_range{2, 20};
    bounds->add_flag("--sweep", sweep, "emit CSV over a grid");
    bounds->add_option("--m-range", m_range, "sweep range for M (lo hi)")->expected(2);
    bounds->add_option("--p-range", p_range, "sweep range for P (lo hi)")->expected(2);
    bounds->add_option("--n-range", n_range, "sweep range for N (lo hi)")->expected(2);
    bounds->add_option("--out", out_path, "CSV output path (default stdout)");

    // audit
    CLI::App* audit = app.add_subcommand("audit", "structural and statistical privacy checks");
    add_mpn(audit);
    audit->add_option("--scheme", scheme, "mds|rounds|auto");
    audit->add_option("--samples", samples, "statistical sample count (0 = structural only)");
    audit->add_option("--seed", seed, "randomness seed");
    audit->add_option("--format", format, "text|csv");

    // table
    CLI::App* table_cmd = app.add_subcommand("table", "print the query table for one run");
    add_mpn(table_cmd);
    table_cmd->add_option("--scheme", scheme, "mds|rounds|auto");
    table_cmd->add_option("--q", field, "field size override (prime)");
    table_cmd->add_option("--pset", pset, "desired subset, e.g. 1,3");
    table_cmd->add_option("--seed", seed, "randomness seed");
    table_cmd->add_option("--format", format, "text|csv");

    // verify
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
    verify->add_option("--filter", filter, "run only criteria whose name contains this");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (plan->parsed()) {
            const mpir::StagePlan sp = mpir::stage_counts(m, p, n);
            const mpir::Rational rate = mpir::rational_rate(sp);
            if (format == "csv") {
                std::cout << "M,P,N,round,stages,per_db_downloads,per_db_undesired,L,rate\n";
                for (int k = 1; k <= m; ++k)
                    std::cout << m << ',' << p << ',' << n << ',' << k << ','
                              << sp.alpha[static_cast<std::size_t>(k - 1)] << ','
                              << sp.downloads_per_db << ',' << sp.undesired_per_db
                              << ',' << sp.message_length << ',' << rate.str() << '\n';
            } else {
                std::cout << "stages per round  ";
                for (int k = 1; k <= m; ++k)
                    std::cout << (k > 1 ? " " : "") << sp.alpha[static_cast<std::size_t>(k - 1)];
                std::cout << "\nper-db downloads  " << sp.downloads_per_db
                          << "\nper-db undesired  " << sp.undesired_per_db;
                if (sp.repeat > 1)
                    std::cout << "\nplan repetitions  " << sp.repeat
                              << " (for a uniform per-message length)";
                std::cout << "\nmessage length L  " << sp.message_length
                          << "\nachieved rate     " << rate.str() << " ("
                          << std::setprecision(12) << rate.to_double() << ")\n";
            }
            return 0;
        }

        if (run->parsed()) {
            mpir::RunConfig config;
            config.scheme = scheme;
            config.message_count = m;
            config.desired_count = p;
            config.db_count = n;
            config.seed = seed;
            if (field != 0) config.field = field;
            if (!pset.empty()) config.desired = parse_pset(pset);
            return run_command(config, format, emit_path);
        }

        if (bounds->parsed()) {
            if (sweep) {
                const auto rows = mpir::gap_surface(m_range[0], m_range[1], p_range[0],
                                                    p_range[1], n_range[0], n_range[1]);
                std::ostringstream os;
                os << "M,P,N,lower,upper,gap\n";
                os << std::setprecision(15);
                for (const auto& row : rows) {
                    os << row.message_count << ',' << row.desired_count << ','
                       << row.db_count << ',' << row.lower.to_double() << ','
                       << row.upper.to_double() << ',' << row.gap.to_double() << '\n';
                }
                if (out_path.empty()) {
                    std::cout << os.str();
                } else {
                    std::ofstream out(out_path);
                    out << os.str();
                }
                return 0;
            }
            if (m == 0 || p == 0 || n == 0) {
                std::cerr << "bounds needs -M -P -N or --sweep\n";
                return 2;
            }
            const mpir::BoundsReport r = mpir::bounds_report(m, p, n);
            std::cout << "upper bound       " << r.upper.str() << " ("
                      << std::setprecision(12) << r.upper.to_double() << ")\n"
                      << "lower bound       " << r.lower.str() << " ("
                      << r.lower.to_double() << ")\n"
                      << "lower (spectral)  " << std::setprecision(12)
                      << r.lower_spectral << "\n";
            if (r.capacity)
                std::cout << "sum capacity      " << r.capacity->str() << "\n";
            std::cout << "gap               " << r.gap.str() << " ("
                      << r.gap.to_double() << ")\n"
                      << "repetition rate   " << r.repetition.str() << "\n"
                      << "extra-symbol rate " << r.delta.str() << "\n"
                      << "subsets C(M,P)    " << r.subset_count << "\n";
            return 0;
        }

        if (audit->parsed()) {
            mpir::RunConfig config;
            config.scheme = scheme;
            config.message_count = m;
            config.desired_count = p;
            config.db_count = n;
            const std::string resolved = mpir::resolve_scheme(config);
            const mpir::SchemeBuilder build = [&](const std::vector<int>& desired,
                                                  std::uint64_t s) {
                mpir::RunConfig c = config;
                c.seed = s;
                const mpir::ProblemParams params = mpir::resolve_params(c, resolved);
                mpir::RetrievalRequest request{desired, s};
                if (resolved == "mds") return mpir::mds_build_queries(params, request);
                return mpir::rounds_build_queries(params, request,
                                                  mpir::stage_counts(m, p, n));
            };
            const mpir::AuditReport structural =
                mpir::structural_privacy_check(build, m, p, seed);
            bool ok = structural.structural_pass;
            if (format == "csv") {
                std::cout << "check,db,pass,max_tv,threshold,samples\n";
                for (std::size_t db = 0; db < structural.per_db_pass.size(); ++db)
                    std::cout << "structural," << db + 1 << ','
                              << (structural.per_db_pass[db] ? 1 : 0) << ",,,\n";
            } else {
                std::cout << "structural audit  "
                          << (structural.structural_pass ? "pass" : "FAIL") << " over "
                          << mpir::all_subsets(m, p).size() << " subsets\n";
            }
            if (samples > 0) {
                const mpir::AuditReport stat = mpir::statistical_privacy_check(
                    build, m, p, mpir::all_subsets(m, p), samples, seed);
                ok = ok && stat.statistical_pass;
                if (format == "csv") {
                    std::cout << "statistical,all," << (stat.statistical_pass ? 1 : 0)
                              << ',' << stat.max_tv << ',' << stat.threshold << ','
                              << stat.samples << '\n';
                } else {
                    std::cout << "statistical audit "
                              << (stat.statistical_pass ? "pass" : "FAIL") << " (max TV "
                              << stat.max_tv << ", threshold " << stat.threshold
                              << ", R=" << stat.samples << ")\n";
                }
            }
            return ok ? 0 : 1;
        }

        if (table_cmd->parsed()) {
            mpir::RunConfig config;
            config.scheme = scheme;
            config.message_count = m;
            config.desired_count = p;
            config.db_count = n;
            config.seed = seed;
            if (field != 0) config.field = field;
            if (!pset.empty()) config.desired = parse_pset(pset);
            const mpir::RateReport report = mpir::cmd_run(config);
            std::cout << (format == "csv" ? mpir::emit_table_csv(report.table)
                                          : mpir::emit_table_text(report.table));
            return 0;
        }

        if (verify->parsed()) {
            const auto results = mpir::run_acceptance(filter);
            bool all = true;
            for (const auto& r : results) {
                std::cout << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id
                          << ": " << r.name;
                if (!r.pass && !r.detail.empty()) std::cout << "  [" << r.detail << "]";
                std::cout << '\n';
                all = all && r.pass;
            }
            std::cout << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
            return all ? 0 : 1;
        }
    } catch (const mpir::DecodeMismatch& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return 1;
    } catch (const mpir::DesiredUndetermined& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return 1;
    } catch (const mpir::Inconsistent& e) {
        std::cerr << "verification failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
