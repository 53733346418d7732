#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

/// Argument outside the domain of a radial evaluator (e.g. r not in (0, pi)).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: quadrature, ODE continuation, degenerate fits.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature ran out of its subdivision budget.
class QuadratureFailure : public NumericalError {
public:
    QuadratureFailure(const std::string& what, double estimate, double error_bound)
        : NumericalError(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

class ContinuationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A supersolution certificate could not be established on its grid.
class CertificateViolation : public NumericalError {
public:
    CertificateViolation(const std::string& what, double witness_r)
        : NumericalError(what), witness_r_(witness_r) {}

    double witness_r() const noexcept { return witness_r_; }

private:
    double witness_r_;
};

}  // namespace hardy
