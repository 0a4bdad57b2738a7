#pragma once

#include <stdexcept>
#include <string>

namespace mdt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularMatrix : Error {
  using Error::Error;
};

struct NotPositiveDefinite : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct OverflowError : Error {
  using Error::Error;
};

struct ReflectionNotSupported : Error {
  using Error::Error;
};

struct UnsupportedDimension : Error {
  using Error::Error;
};

struct EmptyInput : Error {
  using Error::Error;
};

// Karcher solver ran out of iterations; carries the last iterate's stats.
struct NoConvergence : Error {
  NoConvergence(const std::string& msg, int iterations, double gradient_norm)
      : Error(msg), iterations(iterations), gradient_norm(gradient_norm) {}
  int iterations;
  double gradient_norm;
};

struct DegenerateConfiguration : Error {
  using Error::Error;
};

struct EmptyCanvas : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace mdt
