#pragma once

#include <stdexcept>
#include <string>

namespace ttrlguard {

/// Violation of an operation precondition or a type invariant.
class ContractError : public std::invalid_argument {
public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// A rollout batch that breaks its own invariants (empty counts, k = 0,
/// counts not summing to k).
class MalformedBatchError : public ContractError {
public:
  explicit MalformedBatchError(const std::string& what) : ContractError(what) {}
};

/// Bad or inconsistent configuration values.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A label-accuracy series too short to compute ILA/FLA.
class InsufficientHistoryError : public std::runtime_error {
public:
  explicit InsufficientHistoryError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file. Carries a 1-based line number when one is known.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

/// Filesystem failure (unwritable log path, missing input).
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ttrlguard
