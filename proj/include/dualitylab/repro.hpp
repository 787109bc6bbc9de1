#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dualitylab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::vector<std::string> lines;  // measured-vs-expected detail
    double seconds = 0.0;
};

/// Criterion ids belonging to a suite name in {all, metric, duality,
/// closure, mellin}; throws std::invalid_argument otherwise.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id, long seed);

/// Runs the suite, printing one pass/fail line per criterion plus its
/// detail rows; returns 0 iff every criterion passed.
int run_suite(const std::string& suite, long seed, std::ostream& out);

}  // namespace dualitylab
