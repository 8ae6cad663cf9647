#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gcsc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Bad caller input (shapes, ranges, parameter values).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed file on disk.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Well-formed file, bad contents (non-finite values, malformed rows).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation called on an object missing required state.
struct StateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure (non-finite solve results, eigensolver breakdown).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gcsc
