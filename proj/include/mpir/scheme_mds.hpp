#pragma once

#include <cstdint>
#include <vector>

#include "mpir/field.hpp"
#include "mpir/rational.hpp"
#include "mpir/store.hpp"

namespace mpir {

// Two-round scheme over L = N^2 symbols per message: round one fetches one
// symbol of every message from every database; round two fetches, per
// database and per other database j, P coded combinations of P new desired
// symbols with the M-P undesired symbols seen at database j in round one.
//
// The coefficients come from a P x M generator whose every P x P submatrix
// is invertible, with columns scrambled by a private uniform permutation per
// side-information group (the same permutation at every consuming database).
struct MdsPlan {
    gf::FieldMatrix generator;          // P x M
    std::vector<std::vector<int>> perms;  // N-1 column sources, 0-based:
                                          // group j's slot t reads generator
                                          // column perms[j][t]
};

MdsPlan mds_plan(const ProblemParams& params, const RetrievalRequest& request);

// Per database: M singles + P(N-1) coded equations.
QueryTable mds_build_queries(const ProblemParams& params, const RetrievalRequest& request);
QueryTable mds_build_queries(const ProblemParams& params, const RetrievalRequest& request,
                             const MdsPlan& plan);

// Recovers the interleaved desired vectors x_m(1..L), one per requested
// message, by canceling round-one side information and inverting each P x P
// system. Throws DecodeMismatch if a system is singular (construction bug).
std::vector<std::vector<std::uint32_t>> mds_decode(const QueryTable& table,
                                                   const AnswerSet& answers,
                                                   const RetrievalRequest& request);

// PN / (PN + M - P): desired symbols over downloads, independent of q.
Rational mds_rate(int message_count, int desired_count, int db_count);

// Block-diagonal encoding of what one database hands the user for a fixed
// request: an identity block for the round-one desired singles, then one
// P x P block per side-information group holding the generator columns of
// the desired messages after that group's permutation.
gf::FieldMatrix mds_privacy_matrix(const MdsPlan& plan, const ProblemParams& params);

// Default field for the coded scheme: smallest prime strictly above M keeps
// every generator entry nonzero. Anything >= M is accepted by the builder.
std::uint32_t mds_default_field(int message_count);

// L = N^2.
long long mds_message_length(int db_count);

}  // namespace mpir
