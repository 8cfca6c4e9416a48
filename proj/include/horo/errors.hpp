#pragma once

#include <stdexcept>
#include <string>

namespace horo {

/// Base of every error the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed request in the mathematical domain:
/// group-kind mismatch, unknown label, degenerate direction, etc.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Fixed-width coordinate arithmetic left its exact range.
class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A search, enumeration or table ran out of its configured budget before it
/// could settle the question. `achieved` records how far it got (radius,
/// horizon, ... depending on the operation).
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, int achieved)
      : Error(what), achieved_(achieved) {}
  int achieved() const noexcept { return achieved_; }

 private:
  int achieved_;
};

/// Malformed input document. Line and column are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"
                       : what),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace horo
