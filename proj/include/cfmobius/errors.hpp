#pragma once

#include <stdexcept>
#include <string>

namespace cfm {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates an operation's precondition (zero determinant, negative
// entry where a nonnegative one is required, non-positive digit, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed text input (matrix literal, continued-fraction literal, integer).
class ParseError : public Error {
 public:
  using Error::Error;
};

// The transformation is undefined at the given point (cx + d = 0).
class PoleError : public Error {
 public:
  using Error::Error;
};

// A transducer step absorbed more input digits than its budget allows.
class LivenessError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfm
