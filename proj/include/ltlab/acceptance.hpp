#ifndef LTLAB_ACCEPTANCE_HPP
#define LTLAB_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace ltlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

/// Runs the acceptance criteria (all, or the sub-minute subset when quick).
std::vector<CriterionResult> run_acceptance(bool quick);

/// Prints one pass/fail line per criterion; returns the number of failures.
int report_acceptance(const std::vector<CriterionResult>& results);

} // namespace ltlab

#endif
