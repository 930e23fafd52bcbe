// Error classes shared across the library. Every failure the CLI reports
// with a nonzero exit derives from Error.
#pragma once

#include <stdexcept>
#include <string>

namespace latq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State vector of invalid shape, or a norm drifting past tolerance.
struct InvalidState : Error {
    using Error::Error;
};

// Instance data violating the problem contract (bad indices, bad graph, bad clause).
struct MalformedProblem : Error {
    using Error::Error;
};

// Requested ensemble or enumeration cannot be built (m > m_max, search space too large).
struct InfeasibleSpec : Error {
    using Error::Error;
};

// Full-lattice simulation requested above the configured size cap.
struct CapExceeded : Error {
    using Error::Error;
};

// Every recorded step had zero solution probability.
struct NoSolutionAmplitude : Error {
    using Error::Error;
};

}  // namespace latq
