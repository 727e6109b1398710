#pragma once

#include <stdexcept>
#include <string>

namespace ess {

/// Malformed input: bad syntax, shape mismatch, invalid epimorphism data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arithmetic between values that live over different coefficient fields.
class DescriptorMismatch : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A chain complex whose consecutive boundary maps do not compose to zero.
class CompositionError : public InputError {
 public:
  CompositionError(const std::string& what, int degree)
      : InputError(what), degree_(degree) {}
  int degree() const noexcept { return degree_; }

 private:
  int degree_;
};

/// An operation was asked for on inputs outside its hypotheses
/// (wrong group, ring coefficients where a field is required, ...).
class UnsupportedInput : public InputError {
 public:
  using InputError::InputError;
};

/// Two independent computations that must agree did not. Always a bug.
class CrossCheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ess
