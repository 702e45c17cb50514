#pragma once

#include <stdexcept>
#include <string>

namespace binexceed {

/// Argument outside the mathematical domain of an operation (ln of a
/// non-positive number, k outside [0, n], p outside [0, 1], ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A certified comparison could not separate its operands before reaching
/// the precision cap. Callers treat the input as a boundary case.
class UndecidedError : public std::runtime_error {
 public:
  UndecidedError(const std::string& what, int precision_bits)
      : std::runtime_error(what), precision_bits_(precision_bits) {}

  int precision_bits() const noexcept { return precision_bits_; }

 private:
  int precision_bits_;
};

}  // namespace binexceed
