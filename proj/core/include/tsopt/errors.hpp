#pragma once

#include <stdexcept>
#include <string>

namespace tsopt {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Caller passed arguments that violate a documented precondition
/// (bad flag combination, alpha out of range, subset size larger than
/// the suite, ...).  Maps to process exit code 2 in the CLI.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Input data could not be read or parsed (missing file, malformed
/// line, unknown test id, ...).  Maps to process exit code 3 in the CLI.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(what) {}
};

}  // namespace tsopt
