// Acceptance suite: runs every check of the built-in verification suite
// and prints one PASS/FAIL line per criterion. Exits nonzero when any
// check fails.

#include <cstdio>

#include "cdloop/suite.hpp"

int main() {
    auto results = cdloop::run_suite();
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s %s (%.0f ms)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.millis);
        if (!r.detail.empty()) std::fputs(r.detail.c_str(), stdout);
        if (!r.pass) all = false;
    }
    std::printf("%zu checks, %s\n", results.size(),
                all ? "all passed" : "FAILURES present");
    return all ? 0 : 1;
}
