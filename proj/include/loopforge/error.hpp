#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

// Base of every error thrown by the library. The CLI maps all of these to
// exit code 2 except PreconditionViolated.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: non-square table, label outside 0..n-1, bad file syntax.
class InputError : public Error {
 public:
  using Error::Error;
};

class NotLatin : public Error {
 public:
  using Error::Error;
};

class NoIdentity : public Error {
 public:
  using Error::Error;
};

class LabelOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class ElementBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Brute-force or enumeration cap exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class TablesEqual : public Error {
 public:
  using Error::Error;
};

class MalformedInstance : public Error {
 public:
  using Error::Error;
};

}  // namespace loopforge
