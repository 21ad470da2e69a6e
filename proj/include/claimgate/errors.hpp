#pragma once

#include <stdexcept>
#include <string>

namespace claimgate {

// Input outside the mathematical domain of an operation (z <= 0 for ln_gamma,
// dof < 1 for the Student CDF, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller supplied an invalid argument (k = 0, empty vectors, rank-order violation).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Quantity is undefined at a boundary (zero variance, mean DSC of exactly 0 or 1).
class DegenerateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Internal consistency check failed; indicates a bug rather than bad input.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace claimgate
