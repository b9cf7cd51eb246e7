// Acceptance suite runner: one pass/fail line per criterion.

#include <cstdio>

#include "cpnsurf/verify.hpp"

int main() {
    const auto results = cpnsurf::run_acceptance_suite();
    int failures = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failures;
        std::printf("[%s] %-36s worst %.3e tol %.3e  %s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.worst, r.tolerance, r.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", static_cast<int>(results.size()) - failures,
                static_cast<int>(results.size()));
    return failures == 0 ? 0 : 1;
}
