#ifndef RTRACK_ERRORS_HPP_
#define RTRACK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace rtrack {

/// Precondition violated by a caller-supplied value.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation called in the wrong lifecycle state (e.g. step after termination).
class InvalidState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed or incompatible file content.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedVersion : public LoadError {
 public:
  using LoadError::LoadError;
};

/// Configuration or scenario errors; mapped to exit code 2 by the CLI.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown during optimisation; mapped to exit code 3 by the CLI.
class TrainingAborted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rtrack

#endif  // RTRACK_ERRORS_HPP_
