#ifndef UTN_ERRORS_HPP
#define UTN_ERRORS_HPP

#include <stdexcept>

namespace utn {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an API precondition (mismatched fields, bad indices, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// An operation's mathematical precondition failed (non-associative input,
/// product outside a solution space, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularMapError : public Error {
 public:
  SingularMapError() : Error("linear map is singular") {}
};

}  // namespace utn

#endif  // UTN_ERRORS_HPP
