#include <cstdio>

#include "flagcodes/verify.hpp"

// Acceptance gate: one line per criterion, nonzero exit when any fails.
// The criteria map one-to-one onto the verification suites, in order.

int main() {
    const auto& suites = flagcodes::verify::suites();
    std::size_t passed = 0;
    double total = 0.0;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        const auto r = suites[i].run();
        total += r.seconds;
        if (r.passed) {
            ++passed;
            std::printf("criterion %zu (%s): PASS - %zu checks in %.2fs\n", i + 1,
                        r.name.c_str(), r.checks, r.seconds);
        } else {
            std::printf("criterion %zu (%s): FAIL - %s (after %zu checks, %.2fs)\n", i + 1,
                        r.name.c_str(), r.detail.c_str(), r.checks, r.seconds);
        }
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed in %.2fs\n", passed, suites.size(), total);
    return passed == suites.size() ? 0 : 1;
}
