#pragma once

#include <stdexcept>
#include <string>

namespace nahm {

enum class ErrorCode {
  VerticalPair,
  DegenerateConfig,
  GenericityFailure,
  DuplicateNodes,
  ScaleOverflow,
  SingularBlock,
  SingularSystem,
  ZetaAtSingularity,
  InconsistentSpread,
  NonPositiveNorm,
  ZetaTooCloseToDoublePoint,
  AmbiguousAlignment,
  NonGenericTwist,
  AtSource,
  PoleHit,
  StringCrossing,
  InvalidConfig,
  IoError,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::VerticalPair: return "VerticalPair";
    case ErrorCode::DegenerateConfig: return "DegenerateConfig";
    case ErrorCode::GenericityFailure: return "GenericityFailure";
    case ErrorCode::DuplicateNodes: return "DuplicateNodes";
    case ErrorCode::ScaleOverflow: return "ScaleOverflow";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ZetaAtSingularity: return "ZetaAtSingularity";
    case ErrorCode::InconsistentSpread: return "InconsistentSpread";
    case ErrorCode::NonPositiveNorm: return "NonPositiveNorm";
    case ErrorCode::ZetaTooCloseToDoublePoint: return "ZetaTooCloseToDoublePoint";
    case ErrorCode::AmbiguousAlignment: return "AmbiguousAlignment";
    case ErrorCode::NonGenericTwist: return "NonGenericTwist";
    case ErrorCode::AtSource: return "AtSource";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::StringCrossing: return "StringCrossing";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

  // validation errors map to CLI exit 1, numerical failures to exit 2
  bool is_validation() const {
    switch (code_) {
      case ErrorCode::InvalidConfig:
      case ErrorCode::DuplicateNodes:
      case ErrorCode::AtSource:
      case ErrorCode::NonGenericTwist:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace nahm
