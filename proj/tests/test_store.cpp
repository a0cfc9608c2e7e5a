#include <doctest.h>

#include "mpir/store.hpp"
#include "stat_util.hpp"

using namespace mpir;

namespace {

ProblemParams small_params() {
    ProblemParams p;
    p.message_count = 3;
    p.desired_count = 2;
    p.db_count = 2;
    p.q = 5;
    p.length = 4;
    return p;
}

}  // namespace

TEST_CASE("store generation is deterministic and in range") {
    const ProblemParams p = small_params();
    const MessageStore a = generate_store(p, 42);
    const MessageStore b = generate_store(p, 42);
    const MessageStore c = generate_store(p, 43);
    bool identical = true, differs = false;
    for (int m = 1; m <= p.message_count; ++m) {
        for (long long i = 1; i <= p.length; ++i) {
            CHECK(a.w(m, i) < p.q);
            identical = identical && a.w(m, i) == b.w(m, i);
            differs = differs || a.w(m, i) != c.w(m, i);
        }
    }
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("symbol distribution is uniform across seeds") {
    const ProblemParams p = small_params();
    std::vector<long long> counts(p.q, 0);
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        const MessageStore s = generate_store(p, seed);
        for (int m = 1; m <= p.message_count; ++m)
            for (long long i = 1; i <= p.length; ++i) ++counts[s.w(m, i)];
    }
    const double stat = testutil::chi_square_uniform_stat(counts);
    const double pval = testutil::chi_square_p(stat, static_cast<double>(p.q - 1));
    CHECK(pval > 0.01);
}

TEST_CASE("interleaver round trip") {
    const ProblemParams p = small_params();
    const MessageStore s = generate_store(p, 7);
    for (int m = 1; m <= p.message_count; ++m) {
        CHECK(s.deinterleave(m, s.message_x(m)) == s.message_w(m));
    }
}

TEST_CASE("answer evaluation") {
    const ProblemParams p = small_params();
    const MessageStore s = generate_store(p, 11);

    SUBCASE("empty table") {
        QueryTable t;
        t.params = p;
        t.per_db.resize(p.db_count);
        const AnswerSet a = answer(t, s);
        CHECK(a.size() == 2);
        CHECK(a[0].empty());
    }

    SUBCASE("identity query and replication") {
        QueryTable t;
        t.params = p;
        t.per_db.resize(p.db_count);
        Query q;
        q.terms.push_back({1, 1, 1});
        t.per_db[0].push_back(q);
        t.per_db[1].push_back(q);
        const AnswerSet a = answer(t, s);
        CHECK(a[0][0] == s.x(1, 1));
        CHECK(a[0][0] == a[1][0]);  // identical replicas
    }

    SUBCASE("linearity") {
        QueryTable t;
        t.params = p;
        t.per_db.resize(p.db_count);
        Query q1, q2, mix;
        q1.terms.push_back({1, 2, 1});
        q1.terms.push_back({2, 1, 3});
        q2.terms.push_back({3, 4, 2});
        q2.terms.push_back({1, 2, 4});
        const std::uint32_t alpha = 3;
        // alpha*q1 + q2, term by term
        for (const auto& term : q1.terms)
            mix.terms.push_back({term.message, term.index, gf::mul(alpha, term.coeff, p.q)});
        for (const auto& term : q2.terms) mix.terms.push_back(term);
        t.per_db[0] = {q1, q2, mix};
        t.per_db[1] = {};
        const AnswerSet a = answer(t, s);
        CHECK(a[0][2] == gf::add(gf::mul(alpha, a[0][0], p.q), a[0][1], p.q));
    }

    SUBCASE("out of range") {
        QueryTable t;
        t.params = p;
        t.per_db.resize(p.db_count);
        Query q;
        q.terms.push_back({1, p.length + 1, 1});
        t.per_db[0].push_back(q);
        CHECK_THROWS_AS(answer_serial(t, s), IndexOutOfRange);
    }
}

TEST_CASE("parallel answers equal the serial reference") {
    ProblemParams p;
    p.message_count = 5;
    p.desired_count = 2;
    p.db_count = 2;
    p.q = 7;
    p.length = 64;
    const MessageStore s = generate_store(p, 3);
    QueryTable t;
    t.params = p;
    t.per_db.resize(p.db_count);
    Rng rng(17);
    for (int db = 0; db < p.db_count; ++db) {
        for (int k = 0; k < 500; ++k) {
            Query q;
            const int terms = 1 + static_cast<int>(rng.below(4));
            for (int j = 0; j < terms; ++j) {
                q.terms.push_back({1 + static_cast<int>(rng.below(p.message_count)),
                                   1 + static_cast<long long>(rng.below(p.length)),
                                   1 + static_cast<std::uint32_t>(rng.below(p.q - 1))});
            }
            t.per_db[db].push_back(std::move(q));
        }
    }
    CHECK(answer(t, s) == answer_serial(t, s));
}

TEST_CASE("store serialization round trip") {
    const ProblemParams p = small_params();
    const MessageStore s = generate_store(p, 99);
    const std::string text = serialize_store(s);
    const MessageStore r = parse_store(text);
    CHECK(serialize_store(r) == text);
    CHECK(r.seed() == s.seed());
    for (int m = 1; m <= p.message_count; ++m) {
        CHECK(r.message_w(m) == s.message_w(m));
        CHECK(r.message_x(m) == s.message_x(m));  // interleavers rebuilt from seed
    }
}
