#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mpir/store.hpp"

namespace mpir {

// Scheme-independent reliability oracle. Assembles one linear system over
// all M*L interleaved unknowns from the raw query terms and answers, runs
// sparse Gaussian elimination, and reports which coordinates are pinned to
// a single value by the system.
struct OracleReport {
    // x values per desired message (request order); only meaningful where
    // `determined` is true.
    std::vector<std::vector<std::uint32_t>> desired_x;
    std::vector<std::vector<bool>> determined;
    bool all_desired_determined = false;
    long long determined_count = 0;
};

// Throws Inconsistent for contradictory answers. Does not throw when
// coordinates are missing; callers that require full reliability use
// oracle_decode_checked.
OracleReport oracle_decode(const QueryTable& table, const AnswerSet& answers,
                           const RetrievalRequest& request);

// Same, but throws DesiredUndetermined unless every desired coordinate is
// uniquely determined.
OracleReport oracle_decode_checked(const QueryTable& table, const AnswerSet& answers,
                                   const RetrievalRequest& request);

// What one database can tell about a query list once symbol indices are
// stripped: the multiset of per-query shapes (term count plus sorted
// coefficients) and how many queries touch each message identity. Honest
// schemes present the same signature no matter which subset is wanted;
// the identity-bound counts are what catch schemes that favor the wanted
// messages.
struct QuerySignature {
    std::vector<std::pair<int, std::vector<std::uint32_t>>> shapes;  // sorted
    std::vector<long long> occurrences;  // index m-1 = queries touching message m

    bool operator==(const QuerySignature& o) const {
        return shapes == o.shapes && occurrences == o.occurrences;
    }
    std::string encode() const;  // stable string form for hashing/counting
};

QuerySignature query_signature(const std::vector<Query>& queries, int message_count);

// A table builder under audit: subset + seed in, table out.
using SchemeBuilder =
    std::function<QueryTable(const std::vector<int>& desired, std::uint64_t seed)>;

struct AuditReport {
    bool structural_pass = true;
    std::vector<bool> per_db_pass;
    // Statistical part: worst pairwise total-variation estimate per database
    // pair of subsets, the acceptance threshold, and observed support size.
    bool statistical_pass = true;
    double max_tv = 0.0;
    double threshold = 0.0;
    long long support = 0;
    long long samples = 0;
};

// Builds the table for every |P|-subset under the same seed (coupled
// randomness) and passes iff each database sees identical signatures across
// subsets.
AuditReport structural_privacy_check(const SchemeBuilder& build, int message_count,
                                     int desired_count, std::uint64_t seed);

// Samples R independent randomness draws per subset and compares the
// per-database signature distributions pairwise by total-variation
// distance; the pass threshold 3*sqrt(S/R) is plug-in estimator noise, not
// a proof. Sampling parallelizes across draws.
AuditReport statistical_privacy_check(const SchemeBuilder& build, int message_count,
                                      int desired_count,
                                      const std::vector<std::vector<int>>& subsets,
                                      long long samples, std::uint64_t seed);
AuditReport statistical_privacy_check_serial(const SchemeBuilder& build, int message_count,
                                             int desired_count,
                                             const std::vector<std::vector<int>>& subsets,
                                             long long samples, std::uint64_t seed);

// Negative controls for the auditor.
//
// Fetches nothing but the wanted messages; leaks the subset through the
// per-message counts.
QueryTable control_desired_only_table(const ProblemParams& params,
                                      const RetrievalRequest& request);
// Round-one style table that skips message symmetry: wanted messages get
// twice the singles of unwanted ones.
QueryTable control_asymmetric_table(const ProblemParams& params,
                                    const RetrievalRequest& request);

// All C(M,P) subsets in lexicographic order.
std::vector<std::vector<int>> all_subsets(int message_count, int desired_count);

}  // namespace mpir
