#include <doctest.h>

#include "mpir/harness.hpp"
#include "mpir/table_io.hpp"

using namespace mpir;

namespace {

RunConfig config_for(const std::string& scheme, int m, int p, int n,
                     std::uint64_t seed = 1) {
    RunConfig c;
    c.scheme = scheme;
    c.message_count = m;
    c.desired_count = p;
    c.db_count = n;
    c.seed = seed;
    return c;
}

}  // namespace

TEST_CASE("dispatcher splits by regime") {
    CHECK(resolve_scheme(config_for("auto", 4, 2, 2)) == "mds");
    CHECK(resolve_scheme(config_for("auto", 3, 2, 2)) == "mds");
    CHECK(resolve_scheme(config_for("auto", 5, 2, 2)) == "rounds");
    CHECK(resolve_scheme(config_for("rounds", 4, 2, 2)) == "rounds");
    CHECK_THROWS_AS(resolve_scheme(config_for("nope", 3, 2, 2)), Error);
}

TEST_CASE("end-to-end runs hit the closed-form rates") {
    const RateReport mds = cmd_run(config_for("mds", 3, 2, 2));
    CHECK(mds.measured == Rational(4, 5));
    CHECK(mds.total_downloads == 10);
    CHECK(mds.decode_matches_store);
    CHECK(mds.oracle_matches);

    const RateReport rounds = cmd_run(config_for("rounds", 5, 2, 2));
    CHECK(rounds.measured == Rational(17, 28));
    CHECK(rounds.total_downloads == 112);
    CHECK(rounds.decode_matches_store);

    const RateReport base = cmd_run(config_for("rounds", 2, 1, 2));
    CHECK(base.measured == Rational(2, 3));
}

TEST_CASE("run honors subset and field overrides") {
    RunConfig c = config_for("mds", 5, 3, 2, 7);
    c.desired = {2, 3, 5};
    c.field = 5;  // the smallest field that keeps the points distinct
    const RateReport r = cmd_run(c);
    CHECK(r.params.q == 5);
    CHECK(r.measured == Rational(3, 4));
    CHECK(r.decode_matches_store);
}

TEST_CASE("emitted tables round-trip byte for byte") {
    for (const char* scheme : {"mds", "rounds"}) {
        const RateReport r = cmd_run(config_for(scheme, 4, 2, 2, 19));
        const std::string text = emit_table_text(r.table);
        const QueryTable parsed = parse_table_text(text);
        CHECK(emit_table_text(parsed) == text);
        CHECK(parsed.scheme == r.table.scheme);
        CHECK(parsed.params.length == r.table.params.length);
        // term lists survive exactly
        for (std::size_t db = 0; db < parsed.per_db.size(); ++db) {
            REQUIRE(parsed.per_db[db].size() == r.table.per_db[db].size());
            for (std::size_t k = 0; k < parsed.per_db[db].size(); ++k) {
                CHECK(format_query(parsed.per_db[db][k]) ==
                      format_query(r.table.per_db[db][k]));
            }
        }
    }
}

TEST_CASE("csv emission is deterministic") {
    const RateReport a = cmd_run(config_for("rounds", 4, 2, 2, 23));
    const RateReport b = cmd_run(config_for("rounds", 4, 2, 2, 23));
    CHECK(emit_table_csv(a.table) == emit_table_csv(b.table));
    const std::string csv = emit_table_csv(a.table);
    CHECK(csv.rfind("db,round,stage,category,terms\n", 0) == 0);
}

TEST_CASE("acceptance filter narrows the suite") {
    const auto all = run_acceptance("region");
    REQUIRE(all.size() == 1);
    CHECK(all[0].id == 11);
    CHECK(all[0].pass);
}

TEST_CASE("stage-plan corruption fails the exactness criteria") {
    // same spirit as the fault-injection example: a wrong alpha must not
    // slip through the pipeline
    StagePlan plan = stage_counts(4, 2, 2);
    plan.alpha[1] += 1;
    plan.downloads_per_db += binomial(4, 2);
    plan.undesired_per_db += binomial(2, 2);
    CHECK(rational_rate(plan) != rational_rate(stage_counts(4, 2, 2)));
}
