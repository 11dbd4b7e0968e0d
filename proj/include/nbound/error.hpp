#pragma once

#include <stdexcept>
#include <string>

namespace nbound {

/// Bad user input: malformed parameters, inadmissible potentials, bad files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to reach its tolerance or bracket a root.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested moment of the potential diverges.
class NotIntegrable : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The necessary condition for a bound state fails, so p and q do not exist.
class NoBoundStates : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace nbound
