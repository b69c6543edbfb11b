#pragma once

#include <stdexcept>
#include <string>

namespace modelset {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Two scalars from different quadratic fields were combined.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  NoSolution() : Error("no solution") {}
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("singular") {}
};

// Bad user input: malformed scheme, window, vector dimensions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A structural property that must always hold was found broken.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace modelset
