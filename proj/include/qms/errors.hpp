// errors.hpp -- exception types thrown by the qms library
#pragma once

#include <stdexcept>
#include <string>

namespace qms {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch, or a dimension above the configured cap (see max_dim()).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input required to be Hermitian is not, beyond tolerance.
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

// A numerical routine cannot meet its accuracy contract on this input.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

// Input required to be positive semidefinite has a negative eigenvalue
// beyond tolerance.
class NotPSDError : public Error {
 public:
  using Error::Error;
};

// Input is (numerically) the zero operator where a nonzero one is required.
class ZeroOperatorError : public Error {
 public:
  using Error::Error;
};

// Superoperator fails the hermiticity-preservation check.
class NotHermiticityPreservingError : public Error {
 public:
  using Error::Error;
};

// A tuple handed to the conditional-positivity quadratic form violates the
// sum constraint.
class ConstraintViolatedError : public Error {
 public:
  using Error::Error;
};

// The conditional-positivity quadratic form came out with a non-negligible
// imaginary part; the map is not hermiticity preserving.
class NonRealFormError : public Error {
 public:
  using Error::Error;
};

// The completely positive part extracted from a generator failed its CP
// certificate. Carries the offending Choi eigenvalue: either the input is
// not a valid generator, or the tolerance is too tight.
class PhiNotCPError : public Error {
 public:
  PhiNotCPError(const std::string& what, double min_choi_eigenvalue)
      : Error(what), min_choi_eigenvalue(min_choi_eigenvalue) {}
  double min_choi_eigenvalue;
};

// The dilation Gram matrix has a negative eigenvalue beyond tolerance,
// i.e. the map being dilated is not completely positive.
class GramNotPSDError : public Error {
 public:
  GramNotPSDError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue(min_eigenvalue) {}
  double min_eigenvalue;
};

// (1 - eps L) is numerically singular. Carries a condition estimate.
class SingularResolventError : public Error {
 public:
  SingularResolventError(const std::string& what, double condition_estimate)
      : Error(what), condition_estimate(condition_estimate) {}
  double condition_estimate;
};

// Two internal computation routes that must agree did not.
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

// A generator required to be unital (L(1) = 0) is not.
class NotUnitalError : public Error {
 public:
  using Error::Error;
};

// Index out of range for the model being queried.
class IndexError : public Error {
 public:
  using Error::Error;
};

// Input file is not syntactically valid JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Input file is valid JSON but does not match the generator-spec schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace qms
