#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qgt {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

/// Run the invariant checks of the pure-geometry, mixed-geometry and
/// model-zoo modules at their stated tolerances. suite: all | pure | mixed | zoo.
VerifyReport run_verify(const std::string& suite, std::uint64_t seed);

}  // namespace qgt
