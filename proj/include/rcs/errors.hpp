#pragma once

#include <stdexcept>
#include <string>

namespace rcs {

// Error taxonomy shared by the library and the CLI exit-code contract:
// 2 parse, 3 validation, 4 alignment, 64 usage, 65 capacity.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct AlignmentError : Error {
    using Error::Error;
};

struct CapacityError : Error {
    using Error::Error;
};

struct UsageError : Error {
    using Error::Error;
};

// fit_two_gate exhausted its evaluation budget; carries the best point seen.
struct ConvergenceError : Error {
    ConvergenceError(const std::string& msg, double theta, double phi, double objective)
        : Error(msg), best_theta(theta), best_phi(phi), best_objective(objective) {}
    double best_theta;
    double best_phi;
    double best_objective;
};

} // namespace rcs
