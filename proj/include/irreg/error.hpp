#pragma once

#include <stdexcept>
#include <string>

namespace irreg {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph text, subgraph file or weight file.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// An input violates an operation's precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A bounded search (retries, swaps, enumeration size) ran out before finishing.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

// Enumeration or brute-force size cap exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A guarantee that should hold by construction did not; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace irreg
