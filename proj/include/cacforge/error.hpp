#pragma once

#include <stdexcept>
#include <string>

namespace cacforge {

// Precondition violated by caller input (bad modulus, non-prime, gcd != 1, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The exponent equals q-1, which the solvability machinery does not accept.
class DegenerateExponentError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A floating evaluation that must land on an integer did not, or two
// independent routes to the same quantity disagree. Always an implementation bug.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cacforge
