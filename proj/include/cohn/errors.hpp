#pragma once

#include <stdexcept>

namespace cohn {

// Interval operation left its mathematical domain (division by an interval
// containing zero, nonpositive base under a fractional power, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An intersection that provably brackets a root came back empty.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Implicit function theorem inapplicable: the tau-derivative of the
// constraint encloses zero on this box.
struct SingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fixed-point iteration failed to converge within the step budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidRegion : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cohn
