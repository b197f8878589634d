// errors.hpp — error types shared across the library
#pragma once

#include <stdexcept>
#include <string>

namespace skinchain {

// Input has the wrong shape (non-square matrix, mismatched sizes, ...).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A stated precondition on the numeric content of an input is violated
// (non-Hermitian matrix passed to a Hermitian solver, non-normalized
// probability vector, invalid physical parameters, ...).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Iterative eigensolver failed to converge within its sweep budget.
struct ConvergenceError : std::runtime_error {
    int iterations;
    ConvergenceError(const std::string& msg, int iters)
        : std::runtime_error(msg), iterations(iters) {}
};

// Adaptive integrator drove the step size below the representable minimum.
struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spectral decomposition hit a (near-)defective eigenvalue cluster.
struct ExceptionalPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Zero eigenvalue of the generator is not simple.
struct NonUniqueSteadyStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A state that must be positive semidefinite has a negative eigenvalue
// beyond tolerance.
struct PositivityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A distance series never settles below the requested threshold.
struct NotRelaxedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Protocol run hit the time horizon before relaxing; carries the final
// distances reached.
struct HorizonError : std::runtime_error {
    double final_trace_distance;
    double final_hs_distance;
    HorizonError(const std::string& msg, double d_tr, double d_hs)
        : std::runtime_error(msg),
          final_trace_distance(d_tr),
          final_hs_distance(d_hs) {}
};

// Bad run configuration (CLI or config file).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace skinchain
