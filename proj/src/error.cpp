#include "resolvent/error.hpp"

namespace resolvent {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UndecidedPrincipality: return "UndecidedPrincipality";
    case ErrorCode::PointOffChart: return "PointOffChart";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::ZeroCenter: return "ZeroCenter";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::NotPrincipal: return "NotPrincipal";
    case ErrorCode::NoUnitPivot: return "NoUnitPivot";
    case ErrorCode::MinorSizeExceeded: return "MinorSizeExceeded";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::RankDimensionMismatch: return "RankDimensionMismatch";
    case ErrorCode::NoCommonLeaf: return "NoCommonLeaf";
    case ErrorCode::InfinitelyNearPoint: return "InfinitelyNearPoint";
    case ErrorCode::UnlistedBasePoint: return "UnlistedBasePoint";
    case ErrorCode::NotTorsion: return "NotTorsion";
    case ErrorCode::Verification: return "VerificationFailure";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::UnknownVariable:
      return 2;
    case ErrorCode::Verification:
      return 4;
    default:
      return 3;
  }
}

}  // namespace resolvent
