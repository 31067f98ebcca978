// The acceptance battery: thirteen oracle- and property-based criteria with
// pinned tolerances. `check fast` runs the subset {1, 3, 5, 8}.
#pragma once

#include <string>
#include <vector>

namespace mcflab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured values vs thresholds
    double seconds = 0.0;
};

std::vector<int> fast_criteria();
std::vector<int> all_criteria();

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids);

}  // namespace mcflab
