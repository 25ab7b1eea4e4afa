#pragma once

#include <string>
#include <vector>

namespace cdloop {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double millis = 0.0;
};

/// The built-in verification suite: reproduces the structural results
/// this library implements, one named check at a time. `only` filters
/// checks by substring match on the name.
std::vector<SuiteResult> run_suite(const std::string& only = "");

} // namespace cdloop
