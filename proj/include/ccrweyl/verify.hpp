#pragma once

// Invariant suites behind `ccrweyl verify`. Each check records the identity it exercises,
// the measured residual and the tolerance it was held to.

#include <cstdint>
#include <string>
#include <vector>

namespace ccrweyl {

struct RunConfig {
    double grid_l = 10.0;
    int grid_n = 128;
    int levels = 16;
    /// Overrides every quadrature tolerance when positive.
    double tol = 0.0;
    std::uint64_t seed = 1;
};

struct Check {
    std::string suite;
    std::string name;
    std::string identity;
    double residual;
    double tolerance;
    bool passed;
};

struct Report {
    std::vector<Check> checks;

    bool passed() const;
    std::string to_text() const;
    std::string to_json() const;
    std::string to_csv() const;
};

/// Suite names in execution order for "all".
const std::vector<std::string>& suite_names();

/// Runs "units", "gaussian", "spectral", "fock" or "all". Throws std::invalid_argument for
/// an unknown suite or an invalid configuration.
Report run_suite(const std::string& suite, const RunConfig& config);

}  // namespace ccrweyl
