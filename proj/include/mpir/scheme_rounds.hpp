#pragma once

#include <cstdint>
#include <vector>

#include "mpir/stage_planner.hpp"
#include "mpir/store.hpp"

namespace mpir {

// Multi-round scheme driven by a StagePlan. Round i downloads sums of i
// distinct symbols; each stage exhausts all C(M,i) message subsets once.
// Equations split by how many desired messages they touch (the category):
//
//   category 0      fresh undesired sums, produced as side information for
//                   the other databases;
//   category k >= 1 one fresh desired symbol, k-1 desired symbols already
//                   decodable through other databases, plus an undesired
//                   (i-k)-sum previously produced at another database.
//
// Producers are consumed round-robin across the other N-1 databases with
// per-producer stage cursors, so every produced stage is used exactly once
// by each of the other databases and the supply/demand recurrence balances.
QueryTable rounds_build_queries(const ProblemParams& params,
                                const RetrievalRequest& request,
                                const StagePlan& plan);

// Topological decode: round-one singles first, then each mixed equation
// resolves its fresh symbol by subtracting the producing database's answer
// and the pooled symbols decoded in earlier rounds. Returns the interleaved
// desired vectors x_m(1..L) in request order.
std::vector<std::vector<std::uint32_t>> rounds_decode(const QueryTable& table,
                                                      const AnswerSet& answers,
                                                      const RetrievalRequest& request);

// Structural checks on a built table: per-database download and
// side-information counts against the plan, stage-level message symmetry,
// ledger completeness (each produced stage referenced once per consumer),
// and pool sanity. Throws on violation; used by tests and the harness.
void validate_rounds_table(const QueryTable& table, const RetrievalRequest& request,
                           const StagePlan& plan);

}  // namespace mpir
