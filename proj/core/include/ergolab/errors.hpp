#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ergolab {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value does not satisfy the structural invariants of its type
/// (out-of-range cylinder index, reversed interval, wrong mask width).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Operands that cannot be combined: sets over different spaces, scalars
/// from different quadratic fields, a system applied to a foreign set.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The requested construction is not available for this system class.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// An iteration budget ran out before an exact answer was certified.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Input parsed, but describes an object that violates an invariant
/// (weights not summing to one, non-bijective permutation, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergolab
