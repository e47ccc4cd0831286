#pragma once

#include <stdexcept>
#include <string>

namespace shiftop {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input violates a documented precondition or invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftop
