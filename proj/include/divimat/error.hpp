#pragma once

#include <stdexcept>
#include <string>

namespace divimat {

// Base class for every failure raised by the library. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad JSON, unknown variable, missing assignment, ...
class InputError : public Error {
 public:
  using Error::Error;
};

// A polynomial division that was required to be exact left a remainder.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

// An algebraic identity that must hold did not.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

// Well-formed input outside the domain of an operation (torsion point,
// singular curve, enumeration bound exceeded, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace divimat
