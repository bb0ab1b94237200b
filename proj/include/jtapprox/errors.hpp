#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jta {

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An argument violates an operation's precondition (e.g. a vertex set that
/// is not a subset of the graph).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact oracle was asked to solve an instance above its size cap.
class OracleRefused : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A post-condition re-check failed. Always a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jta
