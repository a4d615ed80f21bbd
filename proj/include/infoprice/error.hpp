#pragma once

#include <stdexcept>
#include <string>

namespace infoprice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition or type invariant.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bayes' rule was asked to condition on an event of probability zero.
class ZeroEvidenceError : public Error {
public:
    using Error::Error;
};

/// The virtual values are not nondecreasing; the solver would need ironing.
class IrregularDistributionError : public Error {
public:
    IrregularDistributionError(const std::string& what, double failing_type)
        : Error(what), failing_type_(failing_type) {}

    [[nodiscard]] double failing_type() const noexcept { return failing_type_; }

private:
    double failing_type_;
};

/// A root-finding bracket did not straddle zero, or bisection failed to converge.
class BracketError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public Error {
public:
    using Error::Error;
};

}  // namespace infoprice
