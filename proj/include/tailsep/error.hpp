#pragma once

#include <stdexcept>
#include <string>

namespace tailsep {

// Base of every error thrown by the library. The CLI maps subclasses to
// exit codes: InputError/InvalidArgument/SupportError -> 2, NonConvergence -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An argument fell outside the support where a cdf or quantile is defined.
class SupportError : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Malformed external input (CSV, command line).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace tailsep
