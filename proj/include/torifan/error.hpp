#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "torifan/rational.hpp"

namespace torifan {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundedPolytope : public Error {
 public:
  UnboundedPolytope(std::string what, Vec direction)
      : Error(std::move(what)), direction_(std::move(direction)) {}

  /// A nonzero recession direction of the feasible set.
  const Vec& direction() const noexcept { return direction_; }

 private:
  Vec direction_;
};

class DegeneratePolytope : public Error {
 public:
  using Error::Error;
};

/// Fan validation failure. `kind()` is one of "NotSmooth", "NotComplete",
/// "NotSimplicial", "NotPrimitive", "DuplicateRay", "Malformed".
class ValidationError : public Error {
 public:
  ValidationError(std::string kind, const std::string& detail)
      : Error(kind + ": " + detail), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class NotAmple : public Error {
 public:
  using Error::Error;
};

class NotNef : public Error {
 public:
  using Error::Error;
};

class NotBig : public Error {
 public:
  using Error::Error;
};

class ThresholdExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class EmptyGrid : public Error {
 public:
  using Error::Error;
};

/// A verified inequality failed. Carries the sample that broke it.
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace torifan
