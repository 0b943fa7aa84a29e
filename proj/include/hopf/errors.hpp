#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hopf {

/// Inconsistent construction input or mismatched specs.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested computation is outside what the engine supports.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Base of the failures that are mathematical rather than input problems.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A grouplike element whose value has no inverse in the target algebra.
class GrouplikeNotInvertible : public MathError {
 public:
  GrouplikeNotInvertible(std::string grouplike, std::string value)
      : MathError("GrouplikeNotInvertible(" + grouplike + ", " + value + ")"),
        grouplike_(std::move(grouplike)),
        value_(std::move(value)) {}

  const std::string& grouplike() const { return grouplike_; }
  const std::string& value() const { return value_; }

 private:
  std::string grouplike_;
  std::string value_;
};

/// A key that never enters the filtration within the allowed depth.
class FiltrationNotExhaustive : public MathError {
 public:
  explicit FiltrationNotExhaustive(std::string key)
      : MathError("FiltrationNotExhaustive(" + key + ")"), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// A character was evaluated on a generator it has no rule for.
class RuleNotFound : public MathError {
 public:
  explicit RuleNotFound(std::string generator)
      : MathError("RuleNotFound(" + generator + ")"), generator_(std::move(generator)) {}

  const std::string& generator() const { return generator_; }

 private:
  std::string generator_;
};

}  // namespace hopf
