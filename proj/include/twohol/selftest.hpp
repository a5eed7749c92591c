#pragma once

#include <string>
#include <vector>

namespace twohol {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // failure diagnostics, empty on pass
};

// Run the full acceptance suite (the twelve numbered checks); exceptions are
// caught per criterion and reported as failures.
std::vector<CriterionResult> run_acceptance();

}  // namespace twohol
