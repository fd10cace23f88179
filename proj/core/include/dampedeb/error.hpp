#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dampedeb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset()` is the byte offset of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation left the real domain (sqrt of a negative, division by zero, overflow).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Two grid functions or a grid function and an operator disagree on the grid.
class GridMismatch : public Error {
public:
    using Error::Error;
};

/// Iterative or direct solve failed; carries the last residual when meaningful.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what, double residual = 0.0)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Bad configuration file; line 0 means the error is not tied to a line.
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace dampedeb
