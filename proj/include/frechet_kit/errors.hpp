#pragma once

#include <stdexcept>
#include <string>

namespace fk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSegment : Error {
  DegenerateSegment() : Error("degenerate segment") {}
};
struct EmptyInput : Error {
  using Error::Error;
};
struct InvalidCurve : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct IOError : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};

// Carries the estimated amount of work that would have been needed.
struct BudgetExceeded : Error {
  double estimate = 0.0;
  explicit BudgetExceeded(const std::string& what, double est = 0.0)
      : Error(what), estimate(est) {}
};

}  // namespace fk
