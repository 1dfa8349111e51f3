#pragma once

#include <stdexcept>
#include <string>

namespace pdti {

// Shape / mode mismatches between tensors.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input expected to be Hermitian is not, beyond the stated tolerance.
struct SymmetryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A scalar function or symbol produced a non-finite value where it is applied.
struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An improper integral failed to converge under window doubling.
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid parameter combination (out-of-range exponent, bad spectrum range, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A denominator that the construction requires to be nonzero vanished.
struct DivisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pdti
