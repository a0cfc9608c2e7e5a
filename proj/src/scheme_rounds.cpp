#include "mpir/scheme_rounds.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>

#include "mpir/errors.hpp"

namespace mpir {

namespace {

// All k-subsets of `items` (which is ascending) in lexicographic order.
std::vector<std::vector<int>> k_subsets(const std::vector<int>& items, int k) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(items.size());
    if (k < 0 || k > n) return out;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        std::vector<int> sub(k);
        for (int i = 0; i < k; ++i) sub[i] = items[static_cast<std::size_t>(idx[i])];
        out.push_back(std::move(sub));
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::uint32_t mask_of(const std::vector<int>& messages) {
    std::uint32_t m = 0;
    for (int id : messages) m |= 1u << id;
    return m;
}

std::vector<int> other_dbs(int n, int db_count) {
    std::vector<int> out;
    for (int m = 1; m <= db_count; ++m)
        if (m != n) out.push_back(m);
    return out;
}

// Cat-0 queries of one produced stage, addressed by undesired-subset mask.
struct StageRecord {
    std::unordered_map<std::uint32_t, int> query_of_subset;
};

struct Producers {
    // [db-1][round-1] -> stage records in production order.
    std::vector<std::vector<std::vector<StageRecord>>> stages;
};

}  // namespace

QueryTable rounds_build_queries(const ProblemParams& params,
                                const RetrievalRequest& request,
                                const StagePlan& plan) {
    params.validate();
    request.validate(params);
    const int m = params.message_count, p = params.desired_count, n = params.db_count;
    if (plan.message_count != m || plan.desired_count != p || plan.db_count != n)
        throw Error("stage plan does not match the problem parameters");
    if (params.length != plan.message_length)
        throw Error("message length must equal N(D-U)/P for this plan");
    if (m >= 32) throw Error("round scheme limited to M < 32");

    std::vector<int> undesired;
    for (int msg = 1; msg <= m; ++msg)
        if (!request.is_desired(msg)) undesired.push_back(msg);

    QueryTable table;
    table.params = params;
    table.scheme = "rounds";
    table.per_db.resize(n);

    Producers prod;
    prod.stages.assign(n, std::vector<std::vector<StageRecord>>(m));

    // Round-robin cursor per (consumer, producing round) and per-producer
    // stage cursors; both drive the side-information ledger.
    std::vector<std::vector<long long>> rr(n, std::vector<long long>(m + 1, 0));
    std::vector<std::vector<std::vector<long long>>> stage_cursor(
        n, std::vector<std::vector<long long>>(n, std::vector<long long>(m + 1, 0)));

    // Pool of desired symbols decodable via other databases: FIFO per
    // (consumer, message), refilled at round boundaries so draws always
    // reference strictly earlier rounds.
    std::vector<std::vector<std::deque<long long>>> pool(
        n, std::vector<std::deque<long long>>(m + 1));
    struct FreshEvent {
        int db;
        int message;
        long long index;
    };
    std::vector<FreshEvent> round_events;

    std::vector<long long> next_fresh(m + 1, 1);
    std::map<std::pair<int, std::uint32_t>, long long> rotation;

    // Fresh-symbol quotas: how many of subgroup T's equations give their new
    // symbol to each member. Totals per subgroup are fixed by the plan; the
    // split must leave every desired message with exactly L fresh symbols.
    // Forced for k = 1, waterfilled toward equal remainders for 1 < k < P,
    // and the full subgroup absorbs what is left.
    std::map<std::uint32_t, std::vector<long long>> quota;
    {
        std::vector<long long> demand(static_cast<std::size_t>(p), params.length);
        auto subgroup_total = [&](int k) {
            long long total = 0;
            for (int i = k; i <= m; ++i)
                total += n * plan.stages_of_round(i) * binomial(m - p, i - k);
            return total;
        };
        for (int k = 1; k <= p; ++k) {
            const long long e = subgroup_total(k);
            long long rot = 0;
            for (const auto& sub : k_subsets(request.desired, k)) {
                std::vector<long long> share(static_cast<std::size_t>(k), e / k);
                if (k == p) {
                    for (int t = 0; t < k; ++t) share[static_cast<std::size_t>(t)] =
                        demand[static_cast<std::size_t>(t)];
                } else if (e % k != 0) {
                    // spill to the members with the largest remaining demand
                    std::vector<int> order(static_cast<std::size_t>(k));
                    for (int t = 0; t < k; ++t)
                        order[static_cast<std::size_t>(t)] = static_cast<int>((t + rot) % k);
                    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                        const auto pos = [&](int idx) {
                            return std::lower_bound(request.desired.begin(),
                                                    request.desired.end(),
                                                    sub[static_cast<std::size_t>(idx)]) -
                                   request.desired.begin();
                        };
                        return demand[static_cast<std::size_t>(pos(a))] >
                               demand[static_cast<std::size_t>(pos(b))];
                    });
                    for (long long s = 0; s < e % k; ++s)
                        ++share[static_cast<std::size_t>(order[static_cast<std::size_t>(s)])];
                    ++rot;
                }
                for (int t = 0; t < k; ++t) {
                    const auto pos = std::lower_bound(request.desired.begin(),
                                                      request.desired.end(),
                                                      sub[static_cast<std::size_t>(t)]) -
                                     request.desired.begin();
                    demand[static_cast<std::size_t>(pos)] -= share[static_cast<std::size_t>(t)];
                    if (demand[static_cast<std::size_t>(pos)] < 0)
                        throw Error("fresh-symbol quota turned negative");
                }
                quota[mask_of(sub)] = std::move(share);
            }
        }
        for (long long d : demand) {
            if (d != 0) throw Error("fresh-symbol quotas do not cover the length");
        }
    }

    for (int round = 1; round <= m; ++round) {
        const long long stages = plan.stages_of_round(round);
        round_events.clear();
        for (int db = 1; db <= n && stages > 0; ++db) {
            auto& queries = table.per_db[db - 1];
            const std::vector<int> others = other_dbs(db, n);
            for (long long stage = 1; stage <= stages; ++stage) {
                // Assign producers for this stage's demands in category
                // order, subgroups lexicographic.
                std::map<std::pair<int, std::uint32_t>, std::pair<int, long long>> granted;
                for (int k = 1; k <= std::min(p, round); ++k) {
                    const int prod_round = round - k;
                    if (prod_round < 1) continue;              // pure desired subgroup
                    if (prod_round > m - p) continue;          // category is empty
                    if (binomial(m - p, prod_round) == 0) continue;
                    for (const auto& sub : k_subsets(request.desired, k)) {
                        const long long t = rr[db - 1][prod_round]++;
                        const int src = others[static_cast<std::size_t>(t % (n - 1))];
                        long long s = ++stage_cursor[db - 1][src - 1][prod_round];
                        if (s > plan.stages_of_round(prod_round)) {
                            throw LedgerUnderflow(
                                "round " + std::to_string(round) + " database " +
                                std::to_string(db) + " exhausted round-" +
                                std::to_string(prod_round) + " side information");
                        }
                        granted[{k, mask_of(sub)}] = {src, s};
                    }
                }

                // Emit the stage: all C(M, round) subsets, lexicographic.
                std::vector<int> all_messages(m);
                for (int i = 0; i < m; ++i) all_messages[static_cast<std::size_t>(i)] = i + 1;
                StageRecord record;
                for (const auto& subset : k_subsets(all_messages, round)) {
                    std::vector<int> des, und;
                    for (int msg : subset)
                        (request.is_desired(msg) ? des : und).push_back(msg);
                    const int k = static_cast<int>(des.size());

                    Query q;
                    q.round = round;
                    q.stage = static_cast<int>(stage);
                    q.category = k;
                    q.seq = static_cast<int>(queries.size());

                    if (k == 0) {
                        for (int msg : subset) q.terms.push_back({msg, next_fresh[msg]++, 1});
                        record.query_of_subset[mask_of(subset)] = q.seq;
                        queries.push_back(std::move(q));
                        continue;
                    }

                    const Query* producer = nullptr;
                    if (!und.empty()) {
                        const auto grant = granted.at({k, mask_of(des)});
                        const StageRecord& rec =
                            prod.stages[grant.first - 1][round - k - 1]
                                       [static_cast<std::size_t>(grant.second - 1)];
                        const int pidx = rec.query_of_subset.at(mask_of(und));
                        producer = &table.per_db[grant.first - 1][static_cast<std::size_t>(pidx)];
                        q.producer_db = grant.first;
                        q.producer_index = pidx;
                    }

                    // Fresh symbol goes to the subgroup member with quota
                    // left; ties rotate through the subgroup with a database
                    // offset, which is what makes the per-database
                    // fresh/pooled roles alternate.
                    const auto rot_key = std::make_pair(db, mask_of(des));
                    const long long phase = rotation[rot_key]++ + (db - 1);
                    auto& shares = quota.at(mask_of(des));
                    int fresh_msg = -1;
                    int fresh_pos = -1;
                    long long best = -1;
                    for (int off = 0; off < k; ++off) {
                        const int pos = static_cast<int>((phase + off) % k);
                        if (shares[static_cast<std::size_t>(pos)] > best) {
                            best = shares[static_cast<std::size_t>(pos)];
                            fresh_pos = pos;
                            fresh_msg = des[static_cast<std::size_t>(pos)];
                        }
                    }
                    if (best <= 0) throw Error("fresh-symbol quota exhausted early");
                    --shares[static_cast<std::size_t>(fresh_pos)];

                    for (int msg : subset) {
                        if (msg == fresh_msg) {
                            q.fresh_term = static_cast<int>(q.terms.size());
                            const long long idx = next_fresh[msg]++;
                            q.terms.push_back({msg, idx, 1});
                            round_events.push_back({db, msg, idx});
                        } else if (request.is_desired(msg)) {
                            auto& fifo = pool[db - 1][msg];
                            if (fifo.empty()) {
                                throw PoolUnderflow(
                                    "database " + std::to_string(db) +
                                    " has no decoded symbol of message " +
                                    std::to_string(msg) + " to reuse in round " +
                                    std::to_string(round));
                            }
                            q.pooled_terms.push_back(static_cast<int>(q.terms.size()));
                            q.terms.push_back({msg, fifo.front(), 1});
                            fifo.pop_front();
                        } else {
                            // Copy the producing equation's symbol of this
                            // message so the whole sum cancels at decode.
                            for (const auto& term : producer->terms) {
                                if (term.message == msg) {
                                    q.terms.push_back(term);
                                    break;
                                }
                            }
                        }
                    }
                    queries.push_back(std::move(q));
                }
                prod.stages[db - 1][round - 1].push_back(std::move(record));
            }
        }
        // Fresh desired symbols of this round become poolable for the other
        // databases from the next round on.
        for (const auto& ev : round_events) {
            if (!request.is_desired(ev.message)) continue;
            for (int consumer = 1; consumer <= n; ++consumer) {
                if (consumer != ev.db) pool[consumer - 1][ev.message].push_back(ev.index);
            }
        }
    }

    // Ledger must balance exactly: each produced stage consumed once per
    // other database.
    for (int consumer = 1; consumer <= n; ++consumer) {
        for (int src = 1; src <= n; ++src) {
            if (src == consumer) continue;
            for (int j = 1; j <= m - p; ++j) {
                if (stage_cursor[consumer - 1][src - 1][j] != plan.stages_of_round(j)) {
                    throw Error("side-information ledger left unbalanced");
                }
            }
        }
    }
    // Every desired message must receive exactly L fresh symbols.
    for (int msg : request.desired) {
        if (next_fresh[msg] - 1 != params.length)
            throw Error("fresh-symbol accounting missed the message length");
    }
    for (int msg : undesired) {
        if (next_fresh[msg] - 1 > params.length)
            throw Error("undesired symbol indices overflow the message length");
    }

    // Uniform per-database shuffle of the outgoing query order.
    table.protocol_order.resize(n);
    for (int db = 1; db <= n; ++db) {
        Rng shuffle(derive_seed(
            derive_seed(request.seed, static_cast<std::uint64_t>(Stream::QueryShuffle)),
            static_cast<std::uint64_t>(db)));
        std::vector<int> order(table.per_db[db - 1].size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        shuffle.shuffle(order);
        table.protocol_order[db - 1] = std::move(order);
    }
    return table;
}

std::vector<std::vector<std::uint32_t>> rounds_decode(const QueryTable& table,
                                                      const AnswerSet& answers,
                                                      const RetrievalRequest& request) {
    const ProblemParams& params = table.params;
    const std::uint32_t q = params.q;
    const int m = params.message_count, n = params.db_count;

    std::vector<std::vector<std::uint32_t>> x(
        m, std::vector<std::uint32_t>(static_cast<std::size_t>(params.length), 0));
    std::vector<std::vector<bool>> have(
        m, std::vector<bool>(static_cast<std::size_t>(params.length), false));

    // (round, db, seq) order guarantees every pooled symbol and producing
    // answer is available when an equation is visited.
    struct Ref {
        int round;
        int db;
        int idx;
    };
    std::vector<Ref> order;
    for (int db = 1; db <= n; ++db) {
        for (std::size_t i = 0; i < table.per_db[db - 1].size(); ++i) {
            order.push_back({table.per_db[db - 1][i].round, db, static_cast<int>(i)});
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const Ref& a, const Ref& b) { return a.round < b.round; });

    for (const Ref& ref : order) {
        const Query& query = table.per_db[ref.db - 1][static_cast<std::size_t>(ref.idx)];
        if (query.category == 0 || query.fresh_term < 0) continue;
        std::uint32_t value = answers[ref.db - 1][static_cast<std::size_t>(ref.idx)];
        if (query.producer_index >= 0) {
            value = gf::sub(value,
                            answers[query.producer_db - 1]
                                   [static_cast<std::size_t>(query.producer_index)],
                            q);
        }
        for (int pt : query.pooled_terms) {
            const QueryTerm& term = query.terms[static_cast<std::size_t>(pt)];
            if (!have[term.message - 1][static_cast<std::size_t>(term.index - 1)])
                throw DecodeMismatch("pooled symbol visited before it was decodable");
            value = gf::sub(
                value,
                gf::mul(term.coeff % q,
                        x[term.message - 1][static_cast<std::size_t>(term.index - 1)], q),
                q);
        }
        const QueryTerm& fresh = query.terms[static_cast<std::size_t>(query.fresh_term)];
        const std::uint32_t coeff = fresh.coeff % q;
        const std::uint32_t resolved =
            coeff == 1 ? value : gf::mul(value, gf::inverse(coeff, q), q);
        x[fresh.message - 1][static_cast<std::size_t>(fresh.index - 1)] = resolved;
        have[fresh.message - 1][static_cast<std::size_t>(fresh.index - 1)] = true;
    }

    std::vector<std::vector<std::uint32_t>> out;
    for (int msg : request.desired) {
        for (long long i = 0; i < params.length; ++i) {
            if (!have[msg - 1][static_cast<std::size_t>(i)])
                throw DecodeMismatch("desired symbol left undecoded");
        }
        out.push_back(x[msg - 1]);
    }
    return out;
}

void validate_rounds_table(const QueryTable& table, const RetrievalRequest& request,
                           const StagePlan& plan) {
    const ProblemParams& params = table.params;
    const int m = params.message_count, n = params.db_count;

    // Reference counts toward every produced (cat-0) equation.
    std::vector<std::vector<int>> refs(n);
    for (int db = 1; db <= n; ++db) refs[db - 1].assign(table.per_db[db - 1].size(), 0);

    for (int db = 1; db <= n; ++db) {
        const auto& queries = table.per_db[db - 1];
        if (static_cast<long long>(queries.size()) != plan.queries_per_db())
            throw Error("per-database query count differs from the plan");

        long long undesired_count = 0;
        std::map<std::pair<int, int>, std::vector<long long>> occurrences;
        for (const Query& query : queries) {
            if (query.category == 0) ++undesired_count;
            auto& occ = occurrences[{query.round, query.stage}];
            occ.resize(m + 1, 0);
            for (const auto& term : query.terms) ++occ[static_cast<std::size_t>(term.message)];
            if (query.producer_index >= 0) {
                if (query.producer_db == db)
                    throw Error("database consumed its own side information");
                const Query& producer =
                    table.per_db[query.producer_db - 1][static_cast<std::size_t>(query.producer_index)];
                if (producer.category != 0)
                    throw Error("producer reference is not an undesired equation");
                if (producer.round + query.category != query.round)
                    throw Error("consumption round != production round + category");
                ++refs[query.producer_db - 1][static_cast<std::size_t>(query.producer_index)];
            }
        }
        if (undesired_count != plan.undesired_queries_per_db())
            throw Error("per-database undesired count differs from the plan");

        // Message symmetry inside every stage.
        for (const auto& entry : occurrences) {
            const int round = entry.first.first;
            const long long expect = binomial(m - 1, round - 1);
            for (int msg = 1; msg <= m; ++msg) {
                if (entry.second[static_cast<std::size_t>(msg)] != expect)
                    throw Error("message symmetry broken in round " + std::to_string(round));
            }
        }
    }

    for (int db = 1; db <= n; ++db) {
        const auto& queries = table.per_db[db - 1];
        for (std::size_t i = 0; i < queries.size(); ++i) {
            const Query& query = queries[i];
            if (query.category != 0) continue;
            // Round-M production has no room left to be consumed.
            const int expected = (query.round <= m - params.desired_count) ? n - 1 : 0;
            if (refs[db - 1][i] != expected)
                throw Error("produced equation consumed " + std::to_string(refs[db - 1][i]) +
                            " times, expected " + std::to_string(expected));
        }
    }
    (void)request;
}

}  // namespace mpir
