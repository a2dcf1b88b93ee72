#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace brp {

/// Bad user input: malformed text, out-of-range labels, inconsistent sizes.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An operation applied outside its domain (grafting onto the unit, degree overflow, ...).
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A configured enumeration or dimension cap would be exceeded.
class ResourceLimit : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An algebraic identity or cross-oracle check failed. Indicates a bug, not bad input.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerics that did not converge within their budget.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace brp
