#pragma once

#include <stdexcept>
#include <string>

namespace qfb {

// Invalid user-facing configuration. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical routine could not reach its requested accuracy. Exit code 3.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedRotation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Azimuth requested for a state on the z-axis.
class DegenerateAzimuth : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Linearized continuum feedback angle at P(t) = 1/2.
class DivergentFeedback : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class StepTooLarge : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class BudgetExceeded : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace qfb
