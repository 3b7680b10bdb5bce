// Error types shared across the library. The CLI maps these onto exit codes:
// data-shaped problems (parsing, missing columns, not enough variation) are
// distinguished from numeric failures (singular matrices, non-convergence).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace subdim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid or non-finite numeric input.
struct InvalidInput : Error {
  using Error::Error;
};

// A matrix required to be (numerically) positive definite or invertible is not.
struct SingularMatrix : Error {
  using Error::Error;
};

// An iterative solver hit its iteration cap; carries the last iterate.
struct ConvergenceFailure : Error {
  std::vector<double> last_iterate;
  ConvergenceFailure(const std::string& what, std::vector<double> iterate)
      : Error(what), last_iterate(std::move(iterate)) {}
};

// An observation coincides with the location in a radius-based estimator.
struct DegenerateObservation : Error {
  using Error::Error;
};

// Too few distinct response values to form the requested slices.
struct InsufficientVariation : Error {
  using Error::Error;
};

// Tested dimension k is outside the valid range.
struct InvalidK : Error {
  using Error::Error;
};

// A spectrum violates a positivity requirement (e.g. log of a nonpositive eigenvalue).
struct InvalidSpectrum : Error {
  using Error::Error;
};

// Slice count incompatible with the tested dimension.
struct InvalidSlices : Error {
  using Error::Error;
};

// CSV/usage-level parse problem; cell coordinates are embedded in the message.
struct ParseError : Error {
  using Error::Error;
};

struct ColumnNotFound : Error {
  using Error::Error;
};

// A bootstrap replicate failed twice (original stream and one retry).
struct ReplicateFailure : Error {
  using Error::Error;
};

}  // namespace subdim
