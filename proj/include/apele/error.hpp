#pragma once

#include <stdexcept>
#include <string>

namespace apele {

/// Base class of all errors thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of a function.
class OutOfRangeError : public Error {
public:
  using Error::Error;
};

} // namespace apele
