#include "fibercoh/error.hpp"

namespace fibercoh {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PositivityViolation: return "PositivityViolation";
    case ErrorCode::BadBigrading: return "BadBigrading";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::Inhomogeneous: return "InhomogeneousInput";
    case ErrorCode::AmbientMismatch: return "AmbientMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::OrderNotEliminating: return "OrderNotEliminating";
    case ErrorCode::BaseNotDomain: return "BaseNotDomain";
    case ErrorCode::BaseNotField: return "BaseNotField";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::DualityMismatch: return "DualityMismatch";
    case ErrorCode::ZeroModule: return "ZeroModule";
    case ErrorCode::NotStandardGraded: return "NotStandardGraded";
    case ErrorCode::NotOnVariety: return "NotOnVariety";
    case ErrorCode::ShiftTooSmall: return "ShiftTooSmall";
    case ErrorCode::NoRank: return "NoRank";
    case ErrorCode::LocusIsEverything: return "LocusIsEverything";
    case ErrorCode::NotGenericallyFinite: return "NotGenericallyFinite";
    case ErrorCode::Unstable: return "Unstable";
    case ErrorCode::GenericNotFinite: return "GenericNotFinite";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::UnboundedStrand: return "UnboundedStrand";
    case ErrorCode::UnsupportedBase: return "UnsupportedBase";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UndeclaredName: return "UndeclaredName";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace fibercoh
