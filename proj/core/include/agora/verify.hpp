#pragma once

#include <string>
#include <vector>

namespace agora {

/// Outcome of one acceptance criterion: the headline measured quantity
/// against its pinned tolerance, plus a human-readable breakdown.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double limit = 0.0;
    std::string detail;
};

constexpr int kCriterionCount = 12;

/// Runs acceptance criterion `id` (1..12). `scenario_dir` is only consulted by
/// the bundled-scenario confinement criterion (6); it may be empty otherwise.
CriterionResult run_criterion(int id, const std::string& scenario_dir = "");

/// Criterion ids belonging to a verification suite:
/// moments {1,2}, variance {3,4}, clusters {5,6,12}, kinetic {7,8,9},
/// stability {10,11}.
std::vector<int> suite_criteria(const std::string& suite);

std::vector<CriterionResult> run_suite(const std::string& suite,
                                       const std::string& scenario_dir = "");

/// One fixed-width pass/fail line for reports.
std::string format_result(const CriterionResult& r);

}  // namespace agora
