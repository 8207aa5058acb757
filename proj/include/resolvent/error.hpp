#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resolvent {

enum class ErrorCode {
  ContextMismatch,
  InvalidArgument,
  Parse,
  UnknownVariable,
  UndecidedPrincipality,
  PointOffChart,
  ChartMismatch,
  ZeroCenter,
  DepthExceeded,
  NotPrincipal,
  NoUnitPivot,
  MinorSizeExceeded,
  DegreeCapExceeded,
  RankDimensionMismatch,
  NoCommonLeaf,
  InfinitelyNearPoint,
  UnlistedBasePoint,
  NotTorsion,
  Verification,
};

const char* to_string(ErrorCode code);

/// Exit status the CLI reports for an error of this kind.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Parse, what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace resolvent
