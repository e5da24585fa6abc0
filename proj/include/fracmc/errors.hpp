#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fracmc {

/// Precondition violation: bad interval, order out of range, zero sample count.
/// The CLI maps these to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument at a pole of a special function.
class PoleError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// Runtime numerical failure. The CLI maps these to exit code 1.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A truncated series hit its term cap before meeting its tolerance.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An integrand or right-hand side returned NaN or infinity.
class NonFiniteError : public NumericalError {
public:
    NonFiniteError(const std::string& what, double where)
        : NumericalError(what), where_(where) {}

    /// Abscissa of the offending evaluation.
    double where() const noexcept { return where_; }

private:
    double where_;
};

}  // namespace fracmc

namespace fracmc {

/// A solver step failed; carries the grid index of the failing node.
class SolverNodeError : public NumericalError {
public:
    SolverNodeError(const std::string& what, std::size_t node)
        : NumericalError(what), node_(node) {}

    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

}  // namespace fracmc
