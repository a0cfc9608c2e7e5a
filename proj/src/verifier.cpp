#include "mpir/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <sstream>
#include <unordered_map>

#include "mpir/errors.hpp"
#include "mpir/field.hpp"

namespace mpir {

namespace {

// Sparse row of the oracle system: sorted (variable, coefficient) pairs.
struct SparseRow {
    std::vector<std::pair<long long, std::uint32_t>> terms;
    std::uint32_t rhs = 0;
};

void scale_row(SparseRow& row, std::uint32_t f, std::uint32_t q) {
    for (auto& t : row.terms) t.second = gf::mul(t.second, f, q);
    row.rhs = gf::mul(row.rhs, f, q);
}

// dst -= f * src, merging sorted term lists and dropping zeros.
void axpy_row(SparseRow& dst, const SparseRow& src, std::uint32_t f, std::uint32_t q) {
    std::vector<std::pair<long long, std::uint32_t>> merged;
    merged.reserve(dst.terms.size() + src.terms.size());
    std::size_t a = 0, b = 0;
    while (a < dst.terms.size() || b < src.terms.size()) {
        if (b == src.terms.size() ||
            (a < dst.terms.size() && dst.terms[a].first < src.terms[b].first)) {
            merged.push_back(dst.terms[a++]);
        } else if (a == dst.terms.size() || src.terms[b].first < dst.terms[a].first) {
            const auto& t = src.terms[b++];
            const std::uint32_t c = gf::sub(0, gf::mul(f, t.second, q), q);
            if (c != 0) merged.emplace_back(t.first, c);
        } else {
            const std::uint32_t c =
                gf::sub(dst.terms[a].second, gf::mul(f, src.terms[b].second, q), q);
            if (c != 0) merged.emplace_back(dst.terms[a].first, c);
            ++a;
            ++b;
        }
    }
    dst.terms = std::move(merged);
    dst.rhs = gf::sub(dst.rhs, gf::mul(f, src.rhs, q), q);
}

}  // namespace

OracleReport oracle_decode(const QueryTable& table, const AnswerSet& answers,
                           const RetrievalRequest& request) {
    const ProblemParams& params = table.params;
    const std::uint32_t q = params.q;
    const long long length = params.length;

    std::vector<SparseRow> rows;
    for (std::size_t db = 0; db < table.per_db.size(); ++db) {
        if (answers[db].size() != table.per_db[db].size())
            throw Error("answer count does not match query count");
        for (std::size_t k = 0; k < table.per_db[db].size(); ++k) {
            const Query& query = table.per_db[db][k];
            SparseRow row;
            row.rhs = answers[db][k] % q;
            std::map<long long, std::uint32_t> acc;  // collates repeated terms
            for (const auto& term : query.terms) {
                const long long var = (term.message - 1) * length + (term.index - 1);
                acc[var] = gf::add(acc[var], term.coeff % q, q);
            }
            for (const auto& [var, coeff] : acc) {
                if (coeff != 0) row.terms.emplace_back(var, coeff);
            }
            rows.push_back(std::move(row));
        }
    }

    // Sparse elimination, smallest rows first. Each chosen pivot variable is
    // removed from every other row, so the survivors end in reduced form and
    // pivot rows with a single term are exactly the determined coordinates.
    std::unordered_map<long long, std::vector<int>> rows_of_var;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& t : rows[r].terms)
            rows_of_var[t.first].push_back(static_cast<int>(r));
    }

    std::vector<bool> processed(rows.size(), false);
    using HeapEntry = std::pair<std::size_t, int>;  // (term count, row)
    std::vector<HeapEntry> heap;
    heap.reserve(rows.size());
    auto cmp = [](const HeapEntry& a, const HeapEntry& b) { return a > b; };
    for (std::size_t r = 0; r < rows.size(); ++r) heap.emplace_back(rows[r].terms.size(), static_cast<int>(r));
    std::make_heap(heap.begin(), heap.end(), cmp);

    std::vector<std::pair<long long, int>> pivots;  // (variable, row)
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        const auto [size_then, r] = heap.back();
        heap.pop_back();
        if (processed[static_cast<std::size_t>(r)]) continue;
        SparseRow& row = rows[static_cast<std::size_t>(r)];
        if (row.terms.size() != size_then) {  // stale entry, reinsert fresh
            heap.emplace_back(row.terms.size(), r);
            std::push_heap(heap.begin(), heap.end(), cmp);
            continue;
        }
        if (row.terms.empty()) {
            if (row.rhs != 0) throw Inconsistent("answers contradict each other");
            processed[static_cast<std::size_t>(r)] = true;
            continue;
        }
        processed[static_cast<std::size_t>(r)] = true;
        const long long pivot_var = row.terms.front().first;
        scale_row(row, gf::inverse(row.terms.front().second, q), q);
        pivots.emplace_back(pivot_var, r);

        auto it = rows_of_var.find(pivot_var);
        const std::vector<int> touching = it->second;
        for (int other : touching) {
            if (other == r) continue;
            SparseRow& dst = rows[static_cast<std::size_t>(other)];
            const auto pos = std::lower_bound(
                dst.terms.begin(), dst.terms.end(), pivot_var,
                [](const auto& t, long long v) { return t.first < v; });
            if (pos == dst.terms.end() || pos->first != pivot_var) continue;
            axpy_row(dst, row, pos->second, q);
            for (const auto& t : dst.terms) {
                auto& list = rows_of_var[t.first];
                if (list.empty() || list.back() != other) list.push_back(other);
            }
            if (!processed[static_cast<std::size_t>(other)]) {
                heap.emplace_back(dst.terms.size(), other);
                std::push_heap(heap.begin(), heap.end(), cmp);
            } else if (dst.terms.empty() && dst.rhs != 0) {
                throw Inconsistent("answers contradict each other");
            }
        }
        rows_of_var.erase(pivot_var);
    }

    OracleReport report;
    std::unordered_map<long long, std::pair<std::uint32_t, bool>> value_of;
    for (const auto& [var, r] : pivots) {
        const SparseRow& row = rows[static_cast<std::size_t>(r)];
        if (row.terms.size() == 1 && row.terms.front().first == var) {
            value_of[var] = {row.rhs, true};
        }
    }

    report.all_desired_determined = true;
    for (int msg : request.desired) {
        std::vector<std::uint32_t> vals(static_cast<std::size_t>(length), 0);
        std::vector<bool> det(static_cast<std::size_t>(length), false);
        for (long long i = 0; i < length; ++i) {
            const long long var = static_cast<long long>(msg - 1) * length + i;
            const auto it = value_of.find(var);
            if (it != value_of.end()) {
                vals[static_cast<std::size_t>(i)] = it->second.first;
                det[static_cast<std::size_t>(i)] = true;
                ++report.determined_count;
            } else {
                report.all_desired_determined = false;
            }
        }
        report.desired_x.push_back(std::move(vals));
        report.determined.push_back(std::move(det));
    }
    return report;
}

OracleReport oracle_decode_checked(const QueryTable& table, const AnswerSet& answers,
                                   const RetrievalRequest& request) {
    OracleReport report = oracle_decode(table, answers, request);
    if (!report.all_desired_determined) {
        throw DesiredUndetermined(
            "a desired coordinate is not pinned down by the answers");
    }
    return report;
}

QuerySignature query_signature(const std::vector<Query>& queries, int message_count) {
    QuerySignature sig;
    sig.occurrences.assign(static_cast<std::size_t>(message_count), 0);
    sig.shapes.reserve(queries.size());
    for (const Query& query : queries) {
        std::vector<std::uint32_t> coeffs;
        coeffs.reserve(query.terms.size());
        for (const auto& term : query.terms) {
            coeffs.push_back(term.coeff);
            ++sig.occurrences[static_cast<std::size_t>(term.message - 1)];
        }
        std::sort(coeffs.begin(), coeffs.end());
        sig.shapes.emplace_back(static_cast<int>(query.terms.size()), std::move(coeffs));
    }
    std::sort(sig.shapes.begin(), sig.shapes.end());
    return sig;
}

std::string QuerySignature::encode() const {
    std::ostringstream os;
    for (const auto& s : shapes) {
        os << s.first << ':';
        for (std::uint32_t c : s.second) os << c << ',';
        os << ';';
    }
    os << '|';
    for (long long o : occurrences) os << o << ',';
    return os.str();
}

std::vector<std::vector<int>> all_subsets(int message_count, int desired_count) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(desired_count);
    for (int i = 0; i < desired_count; ++i) idx[i] = i + 1;
    while (true) {
        out.push_back(idx);
        int i = desired_count - 1;
        while (i >= 0 && idx[i] == message_count - desired_count + i + 1) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < desired_count; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

AuditReport structural_privacy_check(const SchemeBuilder& build, int message_count,
                                     int desired_count, std::uint64_t seed) {
    const auto subsets = all_subsets(message_count, desired_count);
    AuditReport report;
    std::vector<std::vector<QuerySignature>> sigs;  // [subset][db]
    for (const auto& subset : subsets) {
        const QueryTable table = build(subset, seed);
        std::vector<QuerySignature> per_db;
        for (const auto& queries : table.per_db)
            per_db.push_back(query_signature(queries, message_count));
        sigs.push_back(std::move(per_db));
    }
    const std::size_t dbs = sigs.front().size();
    report.per_db_pass.assign(dbs, true);
    for (std::size_t db = 0; db < dbs; ++db) {
        for (std::size_t s = 1; s < sigs.size(); ++s) {
            if (!(sigs[s][db] == sigs[0][db])) {
                report.per_db_pass[db] = false;
                report.structural_pass = false;
            }
        }
    }
    return report;
}

namespace {

using Histogram = std::unordered_map<std::string, long long>;

double tv_distance(const Histogram& a, const Histogram& b, long long samples) {
    double sum = 0;
    for (const auto& [key, cnt] : a) {
        const auto it = b.find(key);
        const long long other = it == b.end() ? 0 : it->second;
        sum += std::abs(static_cast<double>(cnt - other));
    }
    for (const auto& [key, cnt] : b) {
        if (a.find(key) == a.end()) sum += static_cast<double>(cnt);
    }
    return sum / (2.0 * static_cast<double>(samples));
}

long long support_size(const std::vector<std::vector<Histogram>>& hists) {
    std::unordered_map<std::string, bool> seen;
    for (const auto& per_subset : hists)
        for (const auto& h : per_subset)
            for (const auto& [key, cnt] : h) seen[key] = true;
    return static_cast<long long>(seen.size());
}

AuditReport statistical_check_impl(const SchemeBuilder& build, int message_count,
                                   const std::vector<std::vector<int>>& subsets,
                                   long long samples, std::uint64_t seed, bool parallel) {
    (void)parallel;
    // hists[subset][db] counts canonical signature strings over the draws.
    std::vector<std::vector<Histogram>> hists(subsets.size());

    for (std::size_t s = 0; s < subsets.size(); ++s) {
        const QueryTable probe = build(subsets[s], derive_seed(seed, 0));
        hists[s].resize(probe.per_db.size());

        std::vector<std::vector<std::string>> keys(
            probe.per_db.size(), std::vector<std::string>(static_cast<std::size_t>(samples)));
        std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
#endif
        for (long long r = 0; r < samples; ++r) {
            try {
                const std::uint64_t draw_seed =
                    derive_seed(seed, (static_cast<std::uint64_t>(s) << 32) ^
                                          static_cast<std::uint64_t>(r));
                const QueryTable table = build(subsets[s], draw_seed);
                for (std::size_t db = 0; db < table.per_db.size(); ++db) {
                    keys[db][static_cast<std::size_t>(r)] =
                        query_signature(table.per_db[db], message_count).encode();
                }
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        for (std::size_t db = 0; db < keys.size(); ++db) {
            for (const auto& key : keys[db]) ++hists[s][db][key];
        }
    }

    AuditReport report;
    report.samples = samples;
    report.support = support_size(hists);
    report.threshold =
        3.0 * std::sqrt(static_cast<double>(report.support) / static_cast<double>(samples));
    const std::size_t dbs = hists.front().size();
    report.per_db_pass.assign(dbs, true);
    for (std::size_t db = 0; db < dbs; ++db) {
        for (std::size_t a = 0; a < subsets.size(); ++a) {
            for (std::size_t b = a + 1; b < subsets.size(); ++b) {
                const double tv = tv_distance(hists[a][db], hists[b][db], samples);
                report.max_tv = std::max(report.max_tv, tv);
                if (tv >= report.threshold) {
                    report.per_db_pass[db] = false;
                    report.statistical_pass = false;
                }
            }
        }
    }
    return report;
}

}  // namespace

AuditReport statistical_privacy_check(const SchemeBuilder& build, int message_count,
                                      int desired_count,
                                      const std::vector<std::vector<int>>& subsets,
                                      long long samples, std::uint64_t seed) {
    (void)desired_count;
    return statistical_check_impl(build, message_count, subsets, samples, seed, true);
}

AuditReport statistical_privacy_check_serial(const SchemeBuilder& build, int message_count,
                                             int desired_count,
                                             const std::vector<std::vector<int>>& subsets,
                                             long long samples, std::uint64_t seed) {
    (void)desired_count;
    return statistical_check_impl(build, message_count, subsets, samples, seed, false);
}

QueryTable control_desired_only_table(const ProblemParams& params,
                                      const RetrievalRequest& request) {
    params.validate();
    request.validate(params);
    QueryTable table;
    table.params = params;
    table.scheme = "control-desired-only";
    table.per_db.resize(params.db_count);
    table.protocol_order.resize(params.db_count);
    const long long share =
        (params.length + params.db_count - 1) / params.db_count;
    for (int db = 1; db <= params.db_count; ++db) {
        auto& queries = table.per_db[db - 1];
        for (int msg : request.desired) {
            for (long long t = 0; t < share; ++t) {
                const long long index = (db - 1) * share + t + 1;
                if (index > params.length) break;
                Query q;
                q.round = 1;
                q.stage = 1;
                q.category = 1;
                q.seq = static_cast<int>(queries.size());
                q.fresh_term = 0;
                q.terms.push_back({msg, index, 1});
                queries.push_back(std::move(q));
            }
        }
        table.protocol_order[db - 1].resize(queries.size());
        for (std::size_t i = 0; i < queries.size(); ++i)
            table.protocol_order[db - 1][i] = static_cast<int>(i);
    }
    return table;
}

QueryTable control_asymmetric_table(const ProblemParams& params,
                                    const RetrievalRequest& request) {
    params.validate();
    request.validate(params);
    QueryTable table;
    table.params = params;
    table.scheme = "control-asymmetric";
    table.per_db.resize(params.db_count);
    table.protocol_order.resize(params.db_count);
    for (int db = 1; db <= params.db_count; ++db) {
        auto& queries = table.per_db[db - 1];
        for (int msg = 1; msg <= params.message_count; ++msg) {
            const int copies = request.is_desired(msg) ? 2 : 1;
            for (int c = 0; c < copies; ++c) {
                Query q;
                q.round = 1;
                q.stage = 1;
                q.category = request.is_desired(msg) ? 1 : 0;
                q.seq = static_cast<int>(queries.size());
                q.fresh_term = 0;
                const long long index = std::min<long long>(
                    params.length, (db - 1) * 2LL + c + 1);
                q.terms.push_back({msg, index, 1});
                queries.push_back(std::move(q));
            }
        }
        table.protocol_order[db - 1].resize(queries.size());
        for (std::size_t i = 0; i < queries.size(); ++i)
            table.protocol_order[db - 1][i] = static_cast<int>(i);
    }
    return table;
}

}  // namespace mpir
