#pragma once

#include <stdexcept>
#include <string>

namespace shiftsym {

/// Base of every error raised by the library. Input/shape problems derive
/// from this; mathematical check failures are reported as values instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built over different generator tables.
class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression text or model file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A value has the wrong degree, weight, size or roster.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The request is well formed but outside what the library models.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A construction refused because a mathematical identity it needs fails
/// (d^2 != 0, master equation residue, obstructed exactness). The message
/// lists the residues in canonical form.
class CheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftsym
