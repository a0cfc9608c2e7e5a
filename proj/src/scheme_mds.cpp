#include "mpir/scheme_mds.hpp"

#include <algorithm>
#include <string>

#include "mpir/errors.hpp"

namespace mpir {

std::uint32_t mds_default_field(int message_count) {
    return gf::next_prime_above(static_cast<std::uint32_t>(message_count));
}

long long mds_message_length(int db_count) {
    return static_cast<long long>(db_count) * db_count;
}

Rational mds_rate(int message_count, int desired_count, int db_count) {
    const long long pn = static_cast<long long>(desired_count) * db_count;
    return Rational(pn, pn + message_count - desired_count);
}

MdsPlan mds_plan(const ProblemParams& params, const RetrievalRequest& request) {
    params.validate();
    request.validate(params);
    if (params.length != mds_message_length(params.db_count))
        throw Error("coded scheme requires L = N^2");
    if (params.q < static_cast<std::uint32_t>(params.message_count)) {
        throw FieldTooSmall("coded scheme needs q >= M, got q = " +
                            std::to_string(params.q));
    }
    MdsPlan plan;
    plan.generator = gf::rs_generator(params.desired_count, params.message_count, params.q);
    Rng rng = Rng::for_stream(request.seed, Stream::CodePermutations);
    for (int j = 1; j < params.db_count; ++j) {
        plan.perms.push_back(rng.permutation(params.message_count));
    }
    return plan;
}

namespace {

// Ascending database ids other than n.
std::vector<int> other_dbs(int n, int db_count) {
    std::vector<int> out;
    for (int m = 1; m <= db_count; ++m)
        if (m != n) out.push_back(m);
    return out;
}

}  // namespace

QueryTable mds_build_queries(const ProblemParams& params, const RetrievalRequest& request) {
    return mds_build_queries(params, request, mds_plan(params, request));
}

QueryTable mds_build_queries(const ProblemParams& params, const RetrievalRequest& request,
                             const MdsPlan& plan) {
    const int m = params.message_count, p = params.desired_count, n = params.db_count;

    std::vector<int> undesired;
    for (int msg = 1; msg <= m; ++msg)
        if (!request.is_desired(msg)) undesired.push_back(msg);

    QueryTable table;
    table.params = params;
    table.scheme = "mds";
    table.per_db.resize(n);
    table.protocol_order.resize(n);

    for (int db = 1; db <= n; ++db) {
        auto& queries = table.per_db[db - 1];
        int seq = 0;

        // Round one: one fresh symbol of every message; index = database id.
        for (int msg = 1; msg <= m; ++msg) {
            Query q;
            q.round = 1;
            q.stage = 1;
            q.category = request.is_desired(msg) ? 1 : 0;
            q.seq = seq++;
            q.terms.push_back({msg, db, 1});
            q.fresh_term = 0;
            queries.push_back(std::move(q));
        }

        // Round two: per side-information group j, P coded equations mixing
        // P fresh desired symbols with the round-one undesired symbols of
        // the j-th other database.
        const std::vector<int> others = other_dbs(db, n);
        for (int j = 1; j <= n - 1; ++j) {
            const int source_db = others[static_cast<std::size_t>(j - 1)];
            const long long fresh_index = n + static_cast<long long>(db - 1) * (n - 1) + j;
            const auto& perm = plan.perms[static_cast<std::size_t>(j - 1)];
            for (int row = 0; row < p; ++row) {
                Query q;
                q.round = 2;
                q.stage = j;
                q.category = p;
                q.seq = seq++;
                q.producer_db = source_db;  // round-one singles cancel the mixture
                // Slot order: desired messages ascending, then undesired
                // ascending; slot t carries generator column perm[t].
                for (int slot = 0; slot < m; ++slot) {
                    const std::uint32_t coeff =
                        plan.generator.at(row, perm[static_cast<std::size_t>(slot)]);
                    if (coeff == 0) continue;  // printed tables drop zero terms
                    QueryTerm term;
                    term.coeff = coeff;
                    if (slot < p) {
                        term.message = request.desired[static_cast<std::size_t>(slot)];
                        term.index = fresh_index;
                    } else {
                        term.message = undesired[static_cast<std::size_t>(slot - p)];
                        term.index = source_db;
                    }
                    q.terms.push_back(term);
                }
                queries.push_back(std::move(q));
            }
        }

        // Round-two equations are emitted to the database in a uniformly
        // shuffled order; round one is symmetric already.
        Rng db_shuffle(derive_seed(
            derive_seed(request.seed, static_cast<std::uint64_t>(Stream::QueryShuffle)),
            static_cast<std::uint64_t>(db)));
        std::vector<int> order(queries.size());
        for (std::size_t i = 0; i < queries.size(); ++i) order[i] = static_cast<int>(i);
        std::vector<int> round2(order.begin() + m, order.end());
        db_shuffle.shuffle(round2);
        std::copy(round2.begin(), round2.end(), order.begin() + m);
        table.protocol_order[db - 1] = std::move(order);
    }
    return table;
}

std::vector<std::vector<std::uint32_t>> mds_decode(const QueryTable& table,
                                                   const AnswerSet& answers,
                                                   const RetrievalRequest& request) {
    const ProblemParams& params = table.params;
    const int m = params.message_count, p = params.desired_count, n = params.db_count;
    const std::uint32_t q = params.q;

    // Phase one: round-one singles resolve directly.
    // resolved[msg-1][index-1] = value of x_msg(index).
    std::vector<std::vector<std::uint32_t>> x(
        m, std::vector<std::uint32_t>(static_cast<std::size_t>(params.length), 0));
    std::vector<std::vector<bool>> have(
        m, std::vector<bool>(static_cast<std::size_t>(params.length), false));

    for (int db = 1; db <= n; ++db) {
        const auto& queries = table.per_db[db - 1];
        for (std::size_t k = 0; k < queries.size(); ++k) {
            const Query& query = queries[k];
            if (query.round != 1) continue;
            const QueryTerm& t = query.terms.front();
            x[t.message - 1][static_cast<std::size_t>(t.index - 1)] = answers[db - 1][k];
            have[t.message - 1][static_cast<std::size_t>(t.index - 1)] = true;
        }
    }

    // Phase two: per (database, group), cancel side information and invert
    // the P x P desired block.
    for (int db = 1; db <= n; ++db) {
        const auto& queries = table.per_db[db - 1];
        for (int j = 1; j <= n - 1; ++j) {
            gf::FieldMatrix system(p, p, q);
            std::vector<std::uint32_t> rhs;
            long long fresh_index = -1;
            int row = 0;
            for (std::size_t k = 0; k < queries.size(); ++k) {
                const Query& query = queries[k];
                if (query.round != 2 || query.stage != j) continue;
                std::uint32_t value = answers[db - 1][k];
                for (const auto& term : query.terms) {
                    const auto it = std::lower_bound(request.desired.begin(),
                                                     request.desired.end(), term.message);
                    if (it != request.desired.end() && *it == term.message) {
                        const int slot = static_cast<int>(it - request.desired.begin());
                        system.at(row, slot) = term.coeff % q;
                        fresh_index = term.index;
                    } else {
                        if (!have[term.message - 1][static_cast<std::size_t>(term.index - 1)])
                            throw DecodeMismatch("side-information symbol missing");
                        const std::uint32_t side =
                            x[term.message - 1][static_cast<std::size_t>(term.index - 1)];
                        value = gf::sub(value, gf::mul(term.coeff % q, side, q), q);
                    }
                }
                rhs.push_back(value);
                ++row;
            }
            if (row != p) throw DecodeMismatch("coded group is missing equations");
            gf::LinearSolution sol = gf::solve_linear(system, rhs);
            for (int slot = 0; slot < p; ++slot) {
                if (!sol.determined[static_cast<std::size_t>(slot)])
                    throw DecodeMismatch("coded block not invertible");
                const int msg = request.desired[static_cast<std::size_t>(slot)];
                x[msg - 1][static_cast<std::size_t>(fresh_index - 1)] =
                    sol.solution[static_cast<std::size_t>(slot)];
                have[msg - 1][static_cast<std::size_t>(fresh_index - 1)] = true;
            }
        }
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

gf::FieldMatrix mds_privacy_matrix(const MdsPlan& plan, const ProblemParams& params) {
    const int p = params.desired_count;
    const int n = params.db_count;
    gf::FieldMatrix h(p * n, p * n, params.q);
    for (int i = 0; i < p; ++i) h.at(i, i) = 1;
    for (int j = 1; j <= n - 1; ++j) {
        const auto& perm = plan.perms[static_cast<std::size_t>(j - 1)];
        const int base = p * j;
        for (int row = 0; row < p; ++row) {
            for (int slot = 0; slot < p; ++slot) {
                h.at(base + row, base + slot) =
                    plan.generator.at(row, perm[static_cast<std::size_t>(slot)]);
            }
        }
    }
    return h;
}

}  // namespace mpir
