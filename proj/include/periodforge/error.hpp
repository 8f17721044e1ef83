#pragma once

#include <stdexcept>
#include <string>

namespace periodforge {

// Violated preconditions and malformed input.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failures of a well-posed computation (overflow, NaN, resource caps).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace periodforge
