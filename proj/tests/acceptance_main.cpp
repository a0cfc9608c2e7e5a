// Runs every acceptance criterion and prints one pass/fail line each.

#include <cstdio>

#include "mpir/harness.hpp"

int main() {
    const auto results = mpir::run_acceptance();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s  criterion %2d: %s%s%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.empty() || r.pass ? "" : "  [",
                    r.pass ? "" : r.detail.c_str(),
                    r.detail.empty() || r.pass ? "" : "]");
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "all criteria passed" : "some criteria FAILED");
    return all ? 0 : 1;
}
