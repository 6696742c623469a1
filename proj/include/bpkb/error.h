#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bpkb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; column 0 means unknown.
// `source` names the file, when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0,
             const std::string& source = "");

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Well-formed input that refers to something that does not exist
// (unknown process, unknown element, unsupported construct).
class InputError : public Error {
 public:
  using Error::Error;
};

// State exploration stopped after the configured number of states.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t budget);
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

// A variable would have to be evaluated under negation before being bound.
class UnsafeNegation : public Error {
 public:
  using Error::Error;
};

// A query or open formula that fails the non-floundering check.
class QueryRejected : public Error {
 public:
  using Error::Error;
};

}  // namespace bpkb
