#pragma once

#include <stdexcept>
#include <string>

namespace kleebox {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad box, inconsistent dimensions, invalid endpoint list.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its documented range (e.g. k > d).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The instance does not belong to the class a reduction requires.
class ClassError : public Error {
 public:
  using Error::Error;
};

/// The brute-force oracle refused an instance whose grid is too large.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// A coordinate computation left the range of Coord.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A volume plan term does not satisfy the plan's claimed class.
class PlanIntegrityError : public Error {
 public:
  using Error::Error;
};

}  // namespace kleebox
