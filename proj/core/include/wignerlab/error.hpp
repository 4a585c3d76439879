#pragma once

#include <stdexcept>
#include <string>

namespace wignerlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid size, unknown
/// descriptor, mismatched grids, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Reading or parsing an input file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The operation refuses to run because a mathematical hypothesis is not
/// satisfied by the input (e.g. covariances requested for a state without a
/// convergent s=2 modulation-norm verdict).
class Refused : public Error {
 public:
  using Error::Error;
};

/// Two ensembles do not generate the same density operator.
class NotEquivalent : public Error {
 public:
  using Error::Error;
};

}  // namespace wignerlab
