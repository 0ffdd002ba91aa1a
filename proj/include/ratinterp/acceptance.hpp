#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace ratinterp {

struct AcceptanceOptions {
    /// Skip the statistical and long-running criteria (5, 9, 10, 12).
    bool quick = false;
    /// Restrict to these criterion numbers; empty runs all of 1..12.
    std::set<int> only;
    std::uint64_t seed = 20240917;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string detail;
    double seconds = 0;
};

/// Runs the criteria in order, printing one PASS/FAIL/SKIP line per
/// criterion to log as each finishes.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options, std::ostream &log);

/// True when nothing ran failed.
bool all_passed(const std::vector<CriterionResult> &results);

} // namespace ratinterp
