#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace commutclass {

struct CheckResult {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tolerance = 0.0;
};

struct SelfCheckReport {
    std::vector<CheckResult> results;
    bool all_passed = false;
};

/// Names of every registered invariant, in execution order.
std::vector<std::string> selfcheck_names();

/// Runs the full invariant suite. Random draws are fixed by the seed.
/// break_name artificially breaks the named invariant (smoke-test hook for
/// verifying the failure path); an unknown name is a validation error.
/// With fail_fast the suite stops at the first failing invariant.
SelfCheckReport run_selfcheck(std::uint64_t seed, std::string_view break_name = {},
                              bool fail_fast = true);

}  // namespace commutclass
