#include "mpir/harness.hpp"

#include <algorithm>

#include "mpir/errors.hpp"
#include "mpir/scheme_mds.hpp"
#include "mpir/scheme_rounds.hpp"
#include "mpir/verifier.hpp"

namespace mpir {

std::string resolve_scheme(const RunConfig& config) {
    if (config.scheme == "mds" || config.scheme == "rounds") return config.scheme;
    if (config.scheme != "auto") throw Error("unknown scheme '" + config.scheme + "'");
    return 2 * config.desired_count >= config.message_count ? "mds" : "rounds";
}

ProblemParams resolve_params(const RunConfig& config, const std::string& scheme) {
    ProblemParams p;
    p.message_count = config.message_count;
    p.desired_count = config.desired_count;
    p.db_count = config.db_count;
    if (scheme == "mds") {
        p.q = config.field.value_or(mds_default_field(config.message_count));
        p.length = mds_message_length(config.db_count);
    } else {
        p.q = config.field.value_or(2);
        const StagePlan plan =
            stage_counts(config.message_count, config.desired_count, config.db_count);
        p.length = plan.message_length;
    }
    p.validate();
    return p;
}

RateReport cmd_run(const RunConfig& config) {
    const std::string scheme = resolve_scheme(config);
    const ProblemParams params = resolve_params(config, scheme);

    RetrievalRequest request;
    request.seed = config.seed;
    request.desired = config.desired;
    if (request.desired.empty()) {
        for (int i = 1; i <= params.desired_count; ++i) request.desired.push_back(i);
    }
    request.validate(params);

    const MessageStore store = generate_store(params, config.seed);

    RateReport report;
    report.scheme = scheme;
    report.params = params;
    report.desired = request.desired;

    std::vector<std::vector<std::uint32_t>> decoded;
    if (scheme == "mds") {
        report.table = mds_build_queries(params, request);
        report.expected =
            mds_rate(params.message_count, params.desired_count, params.db_count);
    } else {
        const StagePlan plan =
            stage_counts(params.message_count, params.desired_count, params.db_count);
        report.table = rounds_build_queries(params, request, plan);
        report.expected = rational_rate(plan);
    }

    const AnswerSet answers = answer(report.table, store);
    decoded = scheme == "mds" ? mds_decode(report.table, answers, request)
                              : rounds_decode(report.table, answers, request);

    report.per_db_downloads = static_cast<long long>(report.table.per_db.front().size());
    report.total_downloads = report.table.total_queries();
    report.desired_symbols =
        static_cast<long long>(params.desired_count) * params.length;
    report.measured = Rational(report.desired_symbols, report.total_downloads);

    report.decode_matches_store = true;
    for (std::size_t i = 0; i < request.desired.size(); ++i) {
        if (decoded[i] != store.message_x(request.desired[i]))
            report.decode_matches_store = false;
    }

    const OracleReport oracle = oracle_decode_checked(report.table, answers, request);
    report.oracle_matches = true;
    for (std::size_t i = 0; i < request.desired.size(); ++i) {
        if (oracle.desired_x[i] != decoded[i]) report.oracle_matches = false;
    }
    return report;
}

}  // namespace mpir
