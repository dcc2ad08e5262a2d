#pragma once

#include <stdexcept>
#include <string>

namespace bit {

/// Raised when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an iterative solver fails to bracket or converge.
class NumericFailure : public std::runtime_error {
public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A value together with a marker that a documented fallback was used
/// because the quantity is undefined for the given input.
struct Flagged {
  double value = 0.0;
  bool degenerate = false;
};

} // namespace bit
