// Acceptance gate: runs every criterion and prints one pass/fail line each.
// Exit status is nonzero if any criterion fails.

#include <cstdio>
#include <exception>
#include <iostream>

#include "agora/verify.hpp"

int main() {
    bool all_pass = true;
    for (int id = 1; id <= agora::kCriterionCount; ++id) {
        try {
            agora::CriterionResult r = agora::run_criterion(id, AGORA_SCENARIO_DIR);
            std::cout << agora::format_result(r) << std::endl;
            all_pass = all_pass && r.pass;
        } catch (const std::exception& e) {
            std::cout << "[FAIL] criterion " << id << ": exception: " << e.what() << std::endl;
            all_pass = false;
        }
    }
    return all_pass ? 0 : 1;
}
