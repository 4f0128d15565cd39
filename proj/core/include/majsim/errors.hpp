#pragma once

#include <stdexcept>
#include <string>

namespace majsim {

// Raised for malformed inputs: dimension mismatches, non-Hermitian operators,
// out-of-range physical parameters.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an integration produces non-finite amplitudes or otherwise
// loses numerical meaning.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when population reaches the top of a truncated Fock space.
class TruncationError : public NumericalError {
 public:
  explicit TruncationError(const std::string& what)
      : NumericalError(what + "; increase Fock truncation") {}
};

}  // namespace majsim
