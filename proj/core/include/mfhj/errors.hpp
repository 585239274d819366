#pragma once

#include <stdexcept>
#include <string>

namespace mfhj {

/// Thrown when an argument violates an operation's precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative method or quadrature fails to reach its
/// tolerance. Carries the best error estimate that was achieved.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved_error_(achieved_error) {}

    double achieved_error() const noexcept { return achieved_error_; }

private:
    double achieved_error_;
};

} // namespace mfhj
