#pragma once

#include <stdexcept>
#include <string>

namespace bachvol {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Option terms or volatility failing their invariants (expiry, discount factor, vol).
class InvalidTermsError : public DomainError {
public:
    using DomainError::DomainError;
};

/// An inversion target lies outside the range the model can attain.
class NoSolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative method hit its iteration cap or could not meet its residual contract.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bachvol
