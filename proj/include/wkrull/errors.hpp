#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wkrull {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Facet enumeration is limited to ambient dimension 4.
class UnsupportedDimension : public Error {
public:
  using Error::Error;
};

/// The unit group is not a direct summand of the quotient group, so it cannot
/// be split off by a unimodular change of coordinates.
class UnsupportedUnits : public Error {
public:
  using Error::Error;
};

class NotPositive : public Error {
public:
  using Error::Error;
};

class NotPointed : public Error {
public:
  using Error::Error;
};

class NotInQuotientGroup : public Error {
public:
  using Error::Error;
};

class NotNormal : public Error {
public:
  using Error::Error;
};

class ParentMismatch : public Error {
public:
  using Error::Error;
};

class PreconditionViolated : public Error {
public:
  using Error::Error;
};

class DepthExceeded : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// Coordinates left the machine-word range used by the enumeration kernels.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// A bounded search produced a result touching the edge of its search box.
/// Raising the degree bound may resolve it.
class BoundExceeded : public Error {
public:
  BoundExceeded(const std::string& what, std::int64_t bound)
      : Error(what + " (degree bound " + std::to_string(bound) + ")"),
        bound_(bound) {}

  std::int64_t bound() const noexcept { return bound_; }

private:
  std::int64_t bound_;
};

} // namespace wkrull
