#pragma once

#include <stdexcept>
#include <string>

namespace defbil {

/// Malformed input: bad parameters, inconsistent tables, wrong signature.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A size or work budget refused the request.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed object violates a property that must hold by construction.
/// Seeing one of these means a bug, not bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace defbil
