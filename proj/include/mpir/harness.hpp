#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpir/bounds.hpp"
#include "mpir/stage_planner.hpp"
#include "mpir/store.hpp"

namespace mpir {

struct RunConfig {
    std::string scheme = "auto";  // "mds", "rounds" or "auto" (regime split)
    int message_count = 0;
    int desired_count = 0;
    int db_count = 0;
    std::optional<std::uint32_t> field;   // default: per-scheme choice
    std::vector<int> desired;             // default: 1..P
    std::uint64_t seed = 1;
};

// Outcome of one full pipeline run: plan, build, answer, decode, oracle
// cross-check.
struct RateReport {
    std::string scheme;
    ProblemParams params;
    std::vector<int> desired;
    long long desired_symbols = 0;   // P * L
    long long total_downloads = 0;
    long long per_db_downloads = 0;
    Rational measured;               // desired_symbols / total_downloads
    Rational expected;               // scheme's closed-form rate
    bool decode_matches_store = false;
    bool oracle_matches = false;
    QueryTable table;                // kept for table emission
};

// Scheme name after resolving "auto": coded scheme when 2P >= M.
std::string resolve_scheme(const RunConfig& config);

// Field and length defaults for a scheme; `plan` is consulted for the
// multi-round length.
ProblemParams resolve_params(const RunConfig& config, const std::string& scheme);

// Full pipeline. Throws on construction/decode errors; the report carries
// the comparison verdicts.
RateReport cmd_run(const RunConfig& config);

// One acceptance criterion outcome.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs every acceptance criterion whose name contains `filter` (empty runs
// all). Each criterion is self-contained and they are independent.
std::vector<CriterionResult> run_acceptance(const std::string& filter = "");

}  // namespace mpir
