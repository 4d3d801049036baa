#pragma once

#include <stdexcept>
#include <string>

namespace toricgw {

enum class ErrorCode {
  ParseError,
  MalformedFan,
  NonPrimitiveRay,
  NonUnimodularCone,
  DuplicateCone,
  DanglingWall,
  NotAdjacent,
  VectorOutsideSupport,
  DegeneratePoint,
  ZeroToNegativePower,
  NotConstant,
  NoAmpleBound,
  TermCapExceeded,
  NotDual,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MalformedFan: return "MalformedFan";
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::NonUnimodularCone: return "NonUnimodularCone";
    case ErrorCode::DuplicateCone: return "DuplicateCone";
    case ErrorCode::DanglingWall: return "DanglingWall";
    case ErrorCode::NotAdjacent: return "NotAdjacent";
    case ErrorCode::VectorOutsideSupport: return "VectorOutsideSupport";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::ZeroToNegativePower: return "ZeroToNegativePower";
    case ErrorCode::NotConstant: return "NotConstant";
    case ErrorCode::NoAmpleBound: return "NoAmpleBound";
    case ErrorCode::TermCapExceeded: return "TermCapExceeded";
    case ErrorCode::NotDual: return "NotDual";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace toricgw
