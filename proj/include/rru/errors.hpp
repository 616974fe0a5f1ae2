#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rru {

// Logical failure (a goal has no solution) is reported through return
// values. Exceptions are reserved for the cases below.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A goal needed a bound argument and got a variable (e.g. `X > 1` with X
// unbound, or append/3 on a partial list).
class InstantiationError : public EngineError {
 public:
  using EngineError::EngineError;
};

class UnboundArithmetic : public InstantiationError {
 public:
  using InstantiationError::InstantiationError;
};

// Unknown arithmetic operator or non-integer operand.
class BadExpression : public EngineError {
 public:
  using EngineError::EngineError;
};

// Wrong argument type for a list builtin.
class TypeError : public EngineError {
 public:
  using EngineError::EngineError;
};

// A scheme was handed a rule that is not an instance of its template.
class TemplateMismatch : public EngineError {
 public:
  using EngineError::EngineError;
};

// A scheme raised an error while the unfolder was growing a deck.
class SchemeFailure : public EngineError {
 public:
  using EngineError::EngineError;
};

// A goal after a passed guard failed. With green cuts this means the
// scheme or the program is wrong.
class CommittedBodyFailure : public EngineError {
 public:
  using EngineError::EngineError;
};

// A full round-robin cycle applied no rule to the goal.
class NoProgress : public EngineError {
 public:
  using EngineError::EngineError;
};

class StepLimitExceeded : public EngineError {
 public:
  using EngineError::EngineError;
};

// Unknown program, scheme, suite or mode.
class ConfigError : public EngineError {
 public:
  using EngineError::EngineError;
};

class ParseError : public EngineError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : EngineError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace rru
