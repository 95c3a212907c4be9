#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace holoweyl {

/// A term-count, basis-size or wall-clock budget was exceeded.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed operator text; position is a 0-based character offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A denominator of a Pfaffian matrix vanishes (or nearly so) at a point.
class SingularLocus : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The staircase of a Groebner basis over rational-function coefficients is
/// infinite, so the ideal is not holonomic at a generic point.
class NotHolonomic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holoweyl
