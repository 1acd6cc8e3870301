#ifndef FRACTION_FORGE_ERROR_HPP
#define FRACTION_FORGE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ff {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: a file, a word, an operator out of range.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A question was asked above the dimension bound of a truncated object.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A property the library verifies on its own output failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace ff

#endif
