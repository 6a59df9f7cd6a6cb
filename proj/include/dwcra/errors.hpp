// Copyright (c) dwcra contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dwcra {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (words, formulas, automata, tables).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(locate(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string locate(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0 && column == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

/// Data arity or relation symbol does not fit the signature/alphabet.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration hit its configured cap.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Arguments violate an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An invariant the construction guarantees did not hold.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dwcra
