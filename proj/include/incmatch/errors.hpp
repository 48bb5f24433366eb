#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace incmatch {

// Malformed text input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Caller violated an operation's precondition (bad node id, bad flag combination).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The pattern cannot be turned into a plan (e.g. it is disconnected).
class PlanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size guard tripped: brute-force search too large, enumeration buffer full.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace incmatch
