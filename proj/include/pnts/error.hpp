#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pnts {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed model, distribution, partition or valuation.
class ModelError : public Error {
public:
  using Error::Error;
};

/// Vectors over different state spaces were combined.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Formula or file syntax error; `position` is a byte offset into the input.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// A formula is not admissible for the selected logic, or refers to unbound names.
class LogicError : public Error {
public:
  using Error::Error;
};

/// A guarded, exponential or iterative computation exceeded its limit.
class ResourceError : public Error {
public:
  using Error::Error;
};

}  // namespace pnts
