#pragma once

#include <stdexcept>
#include <string>

namespace pararm {

// Argument outside the mathematical domain of an operation (negative pull
// count, non-positive gap, unsorted DP input, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Structurally invalid configuration (bad scaling parameters, delta outside
// (0,1), instance recipe that cannot be built, malformed config file).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Query outside the covered range of a tabulated scaling function.
struct TabulatedRangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Instance without a unique best arm.
struct DegenerateInstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fixed-deadline stage cannot execute a single pull per surviving arm.
struct InfeasibleDeadlineError : std::runtime_error {
    int stage;
    InfeasibleDeadlineError(const std::string& msg, int stage_index)
        : std::runtime_error(msg), stage(stage_index) {}
};

// The ledger-level cap on simulated pulls was hit.
struct PullCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pararm
