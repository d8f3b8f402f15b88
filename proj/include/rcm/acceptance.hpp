#pragma once

#include <string>
#include <vector>

namespace rcm {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

// Runs the full verification suite; prints one pass/fail line per criterion
// when verbose.
std::vector<CriterionResult> run_acceptance(bool verbose, int threads = 1);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace rcm
