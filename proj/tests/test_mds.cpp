#include <doctest.h>

#include <map>
#include <set>

#include "mpir/harness.hpp"
#include "mpir/scheme_mds.hpp"
#include "mpir/table_io.hpp"
#include "mpir/verifier.hpp"

using namespace mpir;

namespace {

ProblemParams params_for(int m, int p, int n, std::uint32_t q) {
    ProblemParams params;
    params.message_count = m;
    params.desired_count = p;
    params.db_count = n;
    params.q = q;
    params.length = mds_message_length(n);
    return params;
}

}  // namespace

TEST_CASE("reproduces the 3-message worked table") {
    const ProblemParams params = params_for(3, 2, 2, 5);
    const RetrievalRequest request{{1, 2}, 1};
    MdsPlan plan;
    plan.generator = gf::rs_generator(2, 3, 5);
    plan.perms = {{1, 0, 2}};  // column order 2,1,3

    const QueryTable table = mds_build_queries(params, request, plan);
    REQUIRE(table.per_db.size() == 2);
    REQUIRE(table.per_db[0].size() == 5);

    CHECK(format_query(table.per_db[0][0]) == "a_1");
    CHECK(format_query(table.per_db[0][1]) == "b_1");
    CHECK(format_query(table.per_db[0][2]) == "c_1");
    CHECK(format_query(table.per_db[0][3]) == "a_3+b_3+c_2");
    CHECK(format_query(table.per_db[0][4]) == "2a_3+b_3+3c_2");
    CHECK(format_query(table.per_db[1][3]) == "a_4+b_4+c_1");
    CHECK(format_query(table.per_db[1][4]) == "2a_4+b_4+3c_1");

    const MessageStore store = generate_store(params, 1);
    const AnswerSet answers = answer(table, store);
    const auto decoded = mds_decode(table, answers, request);
    CHECK(decoded[0] == store.message_x(1));
    CHECK(decoded[1] == store.message_x(2));
}

TEST_CASE("reproduces the 4-message 3-database worked table") {
    const ProblemParams params = params_for(4, 2, 3, 5);
    const RetrievalRequest request{{1, 2}, 1};
    MdsPlan plan;
    plan.generator = gf::rs_generator(2, 4, 5);
    plan.perms = {{0, 2, 1, 3}, {3, 0, 2, 1}};  // orders 1,3,2,4 and 4,1,3,2

    const QueryTable table = mds_build_queries(params, request, plan);
    REQUIRE(table.per_db[0].size() == 8);
    CHECK(format_query(table.per_db[0][4]) == "a_4+b_4+c_2+d_2");
    CHECK(format_query(table.per_db[0][5]) == "a_4+3b_4+2c_2+4d_2");
    CHECK(format_query(table.per_db[0][6]) == "a_5+b_5+c_3+d_3");
    CHECK(format_query(table.per_db[0][7]) == "4a_5+b_5+3c_3+2d_3");
    CHECK(format_query(table.per_db[1][4]) == "a_6+b_6+c_1+d_1");
    CHECK(format_query(table.per_db[1][5]) == "a_6+3b_6+2c_1+4d_1");
    CHECK(format_query(table.per_db[2][6]) == "a_9+b_9+c_2+d_2");
    CHECK(format_query(table.per_db[2][7]) == "4a_9+b_9+3c_2+2d_2");

    const MessageStore store = generate_store(params, 5);
    const auto decoded = mds_decode(table, answer(table, store), request);
    CHECK(decoded[0] == store.message_x(1));
}

TEST_CASE("query counts and symbol accounting") {
    for (int m = 2; m <= 8; ++m) {
        for (int p = 1; p <= m; ++p) {
            for (int n = 2; n <= 4; ++n) {
                const std::uint32_t q = mds_default_field(m);
                const ProblemParams params = params_for(m, p, n, q);
                for (const auto& subset : all_subsets(m, p)) {
                    const RetrievalRequest request{subset, 77};
                    const QueryTable table = mds_build_queries(params, request);
                    // per database: M singles + P(N-1) coded equations
                    for (const auto& db : table.per_db)
                        CHECK(static_cast<int>(db.size()) == m + p * (n - 1));
                    // desired messages consume N^2 distinct indices, undesired N
                    std::map<int, std::set<long long>> indices;
                    for (const auto& db : table.per_db)
                        for (const auto& query : db)
                            for (const auto& term : query.terms)
                                indices[term.message].insert(term.index);
                    for (int msg = 1; msg <= m; ++msg) {
                        const bool desired = request.is_desired(msg);
                        CHECK(static_cast<long long>(indices[msg].size()) ==
                              (desired ? static_cast<long long>(n) * n : n));
                    }
                    // measured rate = desired symbols / downloads = closed form
                    const Rational measured(
                        static_cast<long long>(p) * n * n,
                        static_cast<long long>(n) * (m + p * (n - 1)));
                    CHECK(measured == mds_rate(m, p, n));
                }
            }
        }
    }
}

TEST_CASE("fresh desired symbols never collide") {
    const ProblemParams params = params_for(5, 3, 3, 7);
    const RetrievalRequest request{{1, 3, 5}, 13};
    const QueryTable table = mds_build_queries(params, request);
    // each desired message: one fresh index per (db, group) plus round one
    std::map<int, std::multiset<long long>> fresh;
    for (const auto& db : table.per_db) {
        for (const auto& query : db) {
            if (query.round == 1) continue;
            for (const auto& term : query.terms) {
                if (request.is_desired(term.message)) fresh[term.message].insert(term.index);
            }
        }
    }
    for (int msg : request.desired) {
        // P rows share one fresh index per group; beyond that no reuse
        std::set<long long> unique(fresh[msg].begin(), fresh[msg].end());
        CHECK(unique.size() == static_cast<std::size_t>(params.db_count) *
                                   (params.db_count - 1));
        for (long long idx : unique)
            CHECK(fresh[msg].count(idx) <= static_cast<std::size_t>(params.desired_count));
    }
}

TEST_CASE("decode matches store over seeds and subsets") {
    const ProblemParams params = params_for(5, 3, 2, 5);  // q = M exercises 0 entries
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const RetrievalRequest request{{2, 3, 5}, seed};
        const MessageStore store = generate_store(params, seed);
        const QueryTable table = mds_build_queries(params, request);
        const auto decoded = mds_decode(table, answer(table, store), request);
        CHECK(decoded[0] == store.message_x(2));
        CHECK(decoded[1] == store.message_x(3));
        CHECK(decoded[2] == store.message_x(5));
    }
}

TEST_CASE("all-zero store decodes to zeros") {
    const ProblemParams params = params_for(3, 2, 2, 5);
    std::vector<std::vector<std::uint32_t>> zeros(
        3, std::vector<std::uint32_t>(4, 0));
    std::vector<std::vector<int>> identity(3, {0, 1, 2, 3});
    const MessageStore store(params, 0, zeros, identity);
    const RetrievalRequest request{{1, 2}, 9};
    const QueryTable table = mds_build_queries(params, request);
    const auto decoded = mds_decode(table, answer(table, store), request);
    for (const auto& msg : decoded)
        for (std::uint32_t v : msg) CHECK(v == 0);
}

TEST_CASE("privacy matrix is block diagonal with invertible blocks") {
    const ProblemParams params = params_for(4, 2, 3, 5);
    const RetrievalRequest request{{1, 2}, 21};
    const MdsPlan plan = mds_plan(params, request);
    const gf::FieldMatrix h = mds_privacy_matrix(plan, params);
    REQUIRE(h.rows() == 6);
    for (int r = 0; r < h.rows(); ++r) {
        for (int c = 0; c < h.cols(); ++c) {
            if (r / 2 != c / 2) CHECK(h.at(r, c) == 0);
        }
    }
    CHECK(h.at(0, 0) == 1);
    CHECK(h.at(1, 1) == 1);
    CHECK(h.at(0, 1) == 0);
    for (int block = 1; block < 3; ++block) {
        gf::FieldMatrix sub(2, 2, 5);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) sub.at(r, c) = h.at(2 * block + r, 2 * block + c);
        CHECK(gf::determinant(sub) != 0);
    }
}

TEST_CASE("single desired message still mixes everything") {
    const ProblemParams params = params_for(2, 1, 2, 3);
    const RetrievalRequest request{{2}, 31};
    const MessageStore store = generate_store(params, 31);
    const QueryTable table = mds_build_queries(params, request);
    for (const auto& db : table.per_db) CHECK(db.size() == 3);
    const Rational measured(static_cast<long long>(params.length),
                            table.total_queries());
    CHECK(measured == Rational(2, 3));
    CHECK(measured == mds_rate(2, 1, 2));
    const auto decoded = mds_decode(table, answer(table, store), request);
    CHECK(decoded[0] == store.message_x(2));
}

TEST_CASE("rate formula spot values") {
    CHECK(mds_rate(3, 2, 2) == Rational(4, 5));
    CHECK(mds_rate(4, 2, 3) == Rational(3, 4));
    CHECK(mds_rate(6, 6, 3) == Rational(1));
    CHECK(mds_rate(2, 1, 2) == Rational(2, 3));
}

TEST_CASE("field too small") {
    const ProblemParams params = params_for(5, 2, 2, 3);
    const RetrievalRequest request{{1, 2}, 1};
    CHECK_THROWS_AS(mds_build_queries(params, request), FieldTooSmall);
}
