#pragma once

#include <stdexcept>
#include <string>

namespace chaosint {

// Argument outside the mathematical domain of an operation (t outside [0,T],
// Hurst parameter outside (1/2,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Vector or index dimensions that do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent or invalid configuration, e.g. mismatched truncations.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A kernel lacks the data (t-derivative, diagonal limit) an operation needs.
class UnsupportedKernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Covariance matrix with a negative eigenvalue beyond tolerance.
class InvalidCovariance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Endpoint exponent gamma <= -1.
class NonIntegrable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Operation deliberately not provided (Stratonovich SDE).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chaosint
