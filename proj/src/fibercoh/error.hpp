#pragma once

#include <stdexcept>
#include <string>

namespace fibercoh {

enum class ErrorCode {
  PositivityViolation,
  BadBigrading,
  RingMismatch,
  Inhomogeneous,
  AmbientMismatch,
  ShapeMismatch,
  OrderNotEliminating,
  BaseNotDomain,
  BaseNotField,
  TooShort,
  DualityMismatch,
  ZeroModule,
  NotStandardGraded,
  NotOnVariety,
  ShiftTooSmall,
  NoRank,
  LocusIsEverything,
  NotGenericallyFinite,
  Unstable,
  GenericNotFinite,
  ExponentOverflow,
  UnboundedStrand,
  UnsupportedBase,
  ParseError,
  UndeclaredName,
  InvalidArgument,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fibercoh
