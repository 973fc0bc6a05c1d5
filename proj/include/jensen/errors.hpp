#pragma once

#include <stdexcept>
#include <string>

namespace jensen {

// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input defines a lower-dimensional or otherwise degenerate body.
struct DegenerateInput : Error {
  using Error::Error;
};

// Operation not available in the requested dimension.
struct UnsupportedDimension : Error {
  using Error::Error;
};

// Halfspace intersection is unbounded.
struct UnboundedRegion : Error {
  using Error::Error;
};

// Halfspace intersection is empty.
struct EmptyRegion : Error {
  using Error::Error;
};

// A numeric routine failed to converge or produced inconsistent results.
struct NumericalFailure : Error {
  using Error::Error;
};

// Vector/matrix dimensions do not agree.
struct DimensionMismatch : Error {
  using Error::Error;
};

// A stated precondition of a checked theorem does not hold.
struct HypothesisViolated : Error {
  using Error::Error;
};

// A randomized generator exhausted its retry budget.
struct GenerationFailed : Error {
  using Error::Error;
};

// An estimator ran out of evaluation budget before reaching its tolerance.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Malformed JSON input; message names the offending field.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace jensen
