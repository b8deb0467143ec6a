#pragma once

#include <stdexcept>
#include <string>

namespace gk {

// Base of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File and text-format problems. The CLI maps these to exit code 1.
struct InputError : Error {
  using Error::Error;
};
struct ParseError : InputError {
  using InputError::InputError;
};

// Contract violations on arguments or data. CLI exit code 2.
struct ValidationError : Error {
  using Error::Error;
};
struct NotSquareError : ValidationError {
  using ValidationError::ValidationError;
};
struct NotFiniteError : ValidationError {
  using ValidationError::ValidationError;
};
struct NotPsdError : ValidationError {
  NotPsdError(const std::string& msg, double most_negative)
      : ValidationError(msg), most_negative_eigenvalue(most_negative) {}
  double most_negative_eigenvalue;
};
struct IndexOutOfRangeError : ValidationError {
  using ValidationError::ValidationError;
};
struct NegativeWeightError : ValidationError {
  using ValidationError::ValidationError;
};
struct BadRankError : ValidationError {
  using ValidationError::ValidationError;
};
struct DimensionMismatchError : ValidationError {
  using ValidationError::ValidationError;
};
struct BadEntriesError : ValidationError {
  using ValidationError::ValidationError;
};
struct BadKError : ValidationError {
  using ValidationError::ValidationError;
};
struct BadPError : ValidationError {
  using ValidationError::ValidationError;
};
struct TooLargeError : ValidationError {
  using ValidationError::ValidationError;
};
struct PreconditionError : ValidationError {
  using ValidationError::ValidationError;
};
struct SubunitStateError : ValidationError {
  using ValidationError::ValidationError;
};
struct ConfigError : ValidationError {
  using ValidationError::ValidationError;
};

// Numerical breakdowns. CLI exit code 3.
struct NumericalError : Error {
  using Error::Error;
};
struct NullspaceError : NumericalError {
  using NumericalError::NumericalError;
};
struct RankDetectionError : NumericalError {
  using NumericalError::NumericalError;
};

}  // namespace gk
