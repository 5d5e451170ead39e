#pragma once

#include <stdexcept>
#include <string>

namespace solenoid {

// Bad input: a violated precondition, a malformed config, an unknown key.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical guard tripped: step-size bound, quadrature convergence, oracle mismatch.
class NumericalGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace solenoid
