#pragma once

#include <stdexcept>
#include <string>

namespace rwkb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (r <= 0, l + 1/2 <= alpha, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Custom-table potential evaluated outside its tabulated range.
class ExtrapolationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The radicand is non-positive everywhere: no classically allowed interval.
class NoBoundRegionError : public Error {
public:
    using Error::Error;
};

/// More than one classically allowed interval was found.
class MultipleWellsError : public Error {
public:
    using Error::Error;
};

/// Quadrature error estimate above its bound after maximal refinement.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// The quantum condition has no solution on the bound range.
class NoRootError : public Error {
public:
    using Error::Error;
};

/// Node count of a computed state differs from the requested radial quantum number.
class NodeCountError : public Error {
public:
    using Error::Error;
};

/// Iterative solver failed to converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Two sampled functions do not share a common support.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration file or option.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0, int column = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column)
                               + ": " + what
                         : what),
          line_(line), column_(column)
    {
    }

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace rwkb
