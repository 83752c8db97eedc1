#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eulerprod {

enum class ErrorKind {
  // input
  InvalidArgument,
  Syntax,
  ConstantTermNotOne,
  MissingConstantTerm,
  RepeatedExponent,
  ZeroCoefficient,
  ZeroExponentVector,
  NonCollinearTerm,
  InvalidTermIndex,
  // preconditions and numerical failures
  Pole,
  OutOfRange,
  OutsideDomain,
  NearSingularity,
  FlaggedPolynomial,
  AmbiguousAggregation,
  FaceNotSupporting,
  NoDirectionFound,
  NoEPrimeFound,
  NewtonDivergence,
  BranchCollision,
  NotDescending,
  NoConvergence,
  DegenerateGeometricSeries,
  // resource guards
  ResourceLimit,
  // invariant breaches
  NonIntegerGamma,
  RayReductionFailed,
  DerivativeVanishes,
  Internal,
};

std::string_view to_string(ErrorKind kind);

// CLI exit status: 2 input, 3 precondition, 4 resource guard, 5 internal.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eulerprod
