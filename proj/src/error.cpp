#include "eulerprod/error.hpp"

namespace eulerprod {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Syntax: return "Syntax";
    case ErrorKind::ConstantTermNotOne: return "ConstantTermNotOne";
    case ErrorKind::MissingConstantTerm: return "MissingConstantTerm";
    case ErrorKind::RepeatedExponent: return "RepeatedExponent";
    case ErrorKind::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorKind::ZeroExponentVector: return "ZeroExponentVector";
    case ErrorKind::NonCollinearTerm: return "NonCollinearTerm";
    case ErrorKind::InvalidTermIndex: return "InvalidTermIndex";
    case ErrorKind::Pole: return "Pole";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::NearSingularity: return "NearSingularity";
    case ErrorKind::FlaggedPolynomial: return "FlaggedPolynomial";
    case ErrorKind::AmbiguousAggregation: return "AmbiguousAggregation";
    case ErrorKind::FaceNotSupporting: return "FaceNotSupporting";
    case ErrorKind::NoDirectionFound: return "NoDirectionFound";
    case ErrorKind::NoEPrimeFound: return "NoEPrimeFound";
    case ErrorKind::NewtonDivergence: return "NewtonDivergence";
    case ErrorKind::BranchCollision: return "BranchCollision";
    case ErrorKind::NotDescending: return "NotDescending";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateGeometricSeries: return "DegenerateGeometricSeries";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::NonIntegerGamma: return "NonIntegerGamma";
    case ErrorKind::RayReductionFailed: return "RayReductionFailed";
    case ErrorKind::DerivativeVanishes: return "DerivativeVanishes";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Syntax:
    case ErrorKind::ConstantTermNotOne:
    case ErrorKind::MissingConstantTerm:
    case ErrorKind::RepeatedExponent:
    case ErrorKind::ZeroCoefficient:
    case ErrorKind::ZeroExponentVector:
    case ErrorKind::NonCollinearTerm:
    case ErrorKind::InvalidTermIndex:
      return 2;
    case ErrorKind::ResourceLimit:
      return 4;
    case ErrorKind::NonIntegerGamma:
    case ErrorKind::RayReductionFailed:
    case ErrorKind::DerivativeVanishes:
    case ErrorKind::Internal:
      return 5;
    default:
      return 3;
  }
}

}  // namespace eulerprod
