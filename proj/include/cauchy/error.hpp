#pragma once

#include <stdexcept>
#include <string>

namespace cauchy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument at a pole of the function (e.g. gamma at a non-positive integer).
class PoleError : public Error {
public:
  using Error::Error;
};

/// Result not representable as a finite double.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// A documented precondition of a numerical route does not hold.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// Quadrature or extrapolation did not reach the requested tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// No acceptable nonnegative-definite circulant embedding was found.
class EmbeddingError : public Error {
public:
  using Error::Error;
};

class InsufficientData : public Error {
public:
  using Error::Error;
};

/// Invalid user-facing parameters (kernel ranges, grid geometry, ...).
class ParameterError : public Error {
public:
  using Error::Error;
};

}  // namespace cauchy
