#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mpir/errors.hpp"
#include "mpir/field.hpp"
#include "mpir/rng.hpp"

namespace mpir {

// Problem dimensions. Messages, symbol indices and databases are 1-based
// throughout the public interface, matching the table notation (a_1, b_3, ...).
struct ProblemParams {
    int message_count = 0;   // M
    int desired_count = 0;   // P
    int db_count = 0;        // N
    std::uint32_t q = 2;     // prime field size
    long long length = 0;    // L, symbols per message

    void validate() const;
};

// Which P messages the user wants, plus the master randomness seed that
// feeds every private stream (interleavers, code permutations, shuffles).
struct RetrievalRequest {
    std::vector<int> desired;  // sorted, distinct, in [1, M]
    std::uint64_t seed = 0;

    void validate(const ProblemParams& p) const;
    bool is_desired(int message) const;
};

// One linear-combination query: sum of coeff * x_message(index) terms.
// Round/stage/category and the decode bookkeeping fields are user-side
// metadata; a database only ever sees the term list.
struct QueryTerm {
    int message = 0;          // 1..M
    long long index = 0;      // 1..L, interleaved position
    std::uint32_t coeff = 1;  // nonzero
};

struct Query {
    std::vector<QueryTerm> terms;
    int round = 0;
    int stage = 0;
    int category = 0;  // number of desired-message terms
    int seq = 0;       // construction order within the database

    // Decode bookkeeping (not part of the wire format).
    int fresh_term = -1;             // position in `terms` of the new symbol
    std::vector<int> pooled_terms;   // desired terms decoded via other databases
    int producer_db = 0;             // database whose answer cancels the
    int producer_index = -1;         //   embedded undesired sum, if any
};

struct QueryTable {
    ProblemParams params;
    std::string scheme;                         // "mds" or "rounds"
    std::vector<std::vector<Query>> per_db;     // canonical construction order
    std::vector<std::vector<int>> protocol_order;  // uniform shuffle, per db

    long long total_queries() const;
};

// answers[n][k] = value of query k at database n (canonical order).
using AnswerSet = std::vector<std::vector<std::uint32_t>>;

// M messages of L symbols each over GF(q), replicated over N databases,
// plus the per-message private interleavers pi_m. The interleaved view is
// x_m(i) = w_m(pi_m(i)).
class MessageStore {
public:
    MessageStore() = default;
    MessageStore(ProblemParams params, std::uint64_t seed,
                 std::vector<std::vector<std::uint32_t>> messages,
                 std::vector<std::vector<int>> interleavers);

    const ProblemParams& params() const { return params_; }
    std::uint64_t seed() const { return seed_; }

    // Original symbol w_m(j), 1-based.
    std::uint32_t w(int message, long long j) const;
    // Interleaved symbol x_m(i) = w_m(pi_m(i)), 1-based.
    std::uint32_t x(int message, long long i) const;

    std::vector<std::uint32_t> message_w(int message) const;
    std::vector<std::uint32_t> message_x(int message) const;

    // Recover w from an interleaved vector (inverse of the interleaver).
    std::vector<std::uint32_t> deinterleave(int message,
                                            const std::vector<std::uint32_t>& x) const;

private:
    ProblemParams params_;
    std::uint64_t seed_ = 0;
    std::vector<std::vector<std::uint32_t>> messages_;     // M x L, w values
    std::vector<std::vector<int>> interleavers_;           // M x L, 0-based pi
};

// Uniform i.i.d. message symbols and uniform independent interleavers, all
// derived deterministically from `seed`. Every replica is identical, so a
// single copy stands in for all N databases.
MessageStore generate_store(const ProblemParams& params, std::uint64_t seed);

// Evaluate a query table against the store: one answer per query per
// database. Runs the per-query loop with OpenMP when available.
AnswerSet answer(const QueryTable& table, const MessageStore& store);
// Single-threaded reference used by tests and the benchmark.
AnswerSet answer_serial(const QueryTable& table, const MessageStore& store);

// Plain-text store serialization: "M P N q L seed" header then one line of
// space-separated w symbols per message.
std::string serialize_store(const MessageStore& store);
MessageStore parse_store(const std::string& text);

}  // namespace mpir
