#pragma once

#include <string>
#include <vector>

namespace cpnsurf {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;     // largest observed deviation
    double tolerance = 0.0;
    std::string detail;
};

/// Runs every acceptance criterion at its pinned tolerance.
std::vector<CheckResult> run_acceptance_suite();

}  // namespace cpnsurf
