#pragma once

#include <stdexcept>
#include <string>

namespace spin_epsilon {

/// Non-finite or otherwise malformed input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside the supported physical domain (e.g. T <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested table or ensemble exceeds the enumeration guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace spin_epsilon
