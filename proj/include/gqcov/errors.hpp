#pragma once

#include <stdexcept>
#include <string>

namespace gqcov {

/// Invalid user input: bad indices, malformed files, unsupported parameters.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's stated hypotheses do not hold for the given input.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural property that is a proven theorem failed on a concrete
/// instance. Either the input violates the setting or there is a bug upstream;
/// never a recoverable condition.
class ConsistencyViolation : public std::runtime_error {
 public:
  explicit ConsistencyViolation(const std::string& what)
      : std::runtime_error("consistency violation: " + what) {}
};

/// A search hit its configured node limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gqcov
