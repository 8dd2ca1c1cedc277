#pragma once

#include <stdexcept>
#include <string>

namespace ialpha {

/// Failure category. The CLI maps these onto exit codes 2, 3 and 4.
enum class ErrorCategory { usage, data, numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

/// Violated precondition on an argument (bad alpha, bad grid size, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCategory::usage, what) {}
};

/// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorCategory::data, what) {}
};

/// Degenerate or non-finite numerics.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorCategory::numeric, what) {}
};

}  // namespace ialpha
