#pragma once

#include <stdexcept>
#include <string>

namespace ncchain {

/// Parameters outside the physical/validity domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two independently assembled objects that must agree did not. Signals a bug.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Auxiliary-generator degree above the supported Wick cap.
class UnsupportedDegreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid or contradictory configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ncchain
