#include "mpir/store.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mpir {

void ProblemParams::validate() const {
    if (message_count < 1) throw Error("need at least one message");
    if (desired_count < 1 || desired_count > message_count)
        throw Error("desired count must lie in [1, M]");
    if (db_count < 2) throw Error("need at least two databases");
    if (!gf::is_prime(q)) throw Error("field size must be prime");
    if (length < 1) throw Error("message length must be positive");
}

void RetrievalRequest::validate(const ProblemParams& p) const {
    if (static_cast<int>(desired.size()) != p.desired_count)
        throw Error("request must name exactly P messages");
    for (std::size_t i = 0; i < desired.size(); ++i) {
        if (desired[i] < 1 || desired[i] > p.message_count)
            throw Error("desired message id out of range");
        if (i > 0 && desired[i] <= desired[i - 1])
            throw Error("desired message ids must be strictly increasing");
    }
}

bool RetrievalRequest::is_desired(int message) const {
    return std::binary_search(desired.begin(), desired.end(), message);
}

long long QueryTable::total_queries() const {
    long long t = 0;
    for (const auto& db : per_db) t += static_cast<long long>(db.size());
    return t;
}

MessageStore::MessageStore(ProblemParams params, std::uint64_t seed,
                           std::vector<std::vector<std::uint32_t>> messages,
                           std::vector<std::vector<int>> interleavers)
    : params_(params),
      seed_(seed),
      messages_(std::move(messages)),
      interleavers_(std::move(interleavers)) {}

std::uint32_t MessageStore::w(int message, long long j) const {
    return messages_[message - 1][static_cast<std::size_t>(j - 1)];
}

std::uint32_t MessageStore::x(int message, long long i) const {
    const auto& pi = interleavers_[message - 1];
    return messages_[message - 1][static_cast<std::size_t>(pi[static_cast<std::size_t>(i - 1)])];
}

std::vector<std::uint32_t> MessageStore::message_w(int message) const {
    return messages_[message - 1];
}

std::vector<std::uint32_t> MessageStore::message_x(int message) const {
    std::vector<std::uint32_t> out(params_.length);
    for (long long i = 1; i <= params_.length; ++i)
        out[static_cast<std::size_t>(i - 1)] = x(message, i);
    return out;
}

std::vector<std::uint32_t> MessageStore::deinterleave(
    int message, const std::vector<std::uint32_t>& xv) const {
    const auto& pi = interleavers_[message - 1];
    std::vector<std::uint32_t> out(xv.size());
    for (std::size_t i = 0; i < xv.size(); ++i) out[pi[i]] = xv[i];
    return out;
}

MessageStore generate_store(const ProblemParams& params, std::uint64_t seed) {
    params.validate();
    Rng content = Rng::for_stream(seed, Stream::MessageContent);
    Rng inter = Rng::for_stream(seed, Stream::Interleavers);

    std::vector<std::vector<std::uint32_t>> msgs(params.message_count);
    std::vector<std::vector<int>> pis(params.message_count);
    for (int m = 0; m < params.message_count; ++m) {
        msgs[m].resize(params.length);
        for (long long i = 0; i < params.length; ++i)
            msgs[m][static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>(content.below(params.q));
        pis[m] = inter.permutation(static_cast<int>(params.length));
    }
    return MessageStore(params, seed, std::move(msgs), std::move(pis));
}

namespace {

std::uint32_t evaluate(const Query& query, const MessageStore& store) {
    const auto& p = store.params();
    std::uint32_t acc = 0;
    for (const auto& t : query.terms) {
        if (t.message < 1 || t.message > p.message_count || t.index < 1 ||
            t.index > p.length) {
            throw IndexOutOfRange("query term outside the store");
        }
        acc = gf::add(acc, gf::mul(t.coeff % p.q, store.x(t.message, t.index), p.q), p.q);
    }
    return acc;
}

}  // namespace

AnswerSet answer(const QueryTable& table, const MessageStore& store) {
    AnswerSet out(table.per_db.size());
    for (std::size_t n = 0; n < table.per_db.size(); ++n) {
        const auto& queries = table.per_db[n];
        auto& dst = out[n];
        dst.resize(queries.size());
        // Replicas answer independently; queries within one database are
        // independent too, so a flat parallel loop is safe. Tiny tables are
        // not worth a thread team.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (queries.size() >= 1024)
#endif
        for (long long k = 0; k < static_cast<long long>(queries.size()); ++k) {
            dst[static_cast<std::size_t>(k)] = evaluate(queries[static_cast<std::size_t>(k)], store);
        }
    }
    return out;
}

AnswerSet answer_serial(const QueryTable& table, const MessageStore& store) {
    AnswerSet out(table.per_db.size());
    for (std::size_t n = 0; n < table.per_db.size(); ++n) {
        out[n].reserve(table.per_db[n].size());
        for (const auto& q : table.per_db[n]) out[n].push_back(evaluate(q, store));
    }
    return out;
}

std::string serialize_store(const MessageStore& store) {
    const auto& p = store.params();
    std::ostringstream os;
    os << p.message_count << ' ' << p.desired_count << ' ' << p.db_count << ' '
       << p.q << ' ' << p.length << ' ' << store.seed() << '\n';
    for (int m = 1; m <= p.message_count; ++m) {
        for (long long j = 1; j <= p.length; ++j) {
            if (j > 1) os << ' ';
            os << store.w(m, j);
        }
        os << '\n';
    }
    return os.str();
}

MessageStore parse_store(const std::string& text) {
    std::istringstream is(text);
    ProblemParams p;
    std::uint64_t seed = 0;
    if (!(is >> p.message_count >> p.desired_count >> p.db_count >> p.q >>
          p.length >> seed)) {
        throw Error("malformed store header");
    }
    p.validate();
    std::vector<std::vector<std::uint32_t>> msgs(p.message_count);
    for (int m = 0; m < p.message_count; ++m) {
        msgs[m].resize(p.length);
        for (long long j = 0; j < p.length; ++j) {
            long long v;
            if (!(is >> v) || v < 0 || v >= static_cast<long long>(p.q))
                throw Error("malformed store symbol");
            msgs[m][static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(v);
        }
    }
    // Interleavers are not serialized; they are regenerated from the seed.
    Rng inter = Rng::for_stream(seed, Stream::Interleavers);
    std::vector<std::vector<int>> pis(p.message_count);
    for (int m = 0; m < p.message_count; ++m)
        pis[m] = inter.permutation(static_cast<int>(p.length));
    return MessageStore(p, seed, std::move(msgs), std::move(pis));
}

}  // namespace mpir
