#include "cosdyn/error.hpp"

namespace cosdyn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::NoConvergence: return "NoConvergence";
  case ErrorCode::DegenerateJacobian: return "DegenerateJacobian";
  case ErrorCode::NotInBasin: return "NotInBasin";
  case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
  case ErrorCode::NotTypeA: return "NotTypeA";
  case ErrorCode::NotTypeC: return "NotTypeC";
  case ErrorCode::NotTypeD: return "NotTypeD";
  case ErrorCode::WrongEntryTime: return "WrongEntryTime";
  case ErrorCode::ContinuationStall: return "ContinuationStall";
  case ErrorCode::ClassDrift: return "ClassDrift";
  case ErrorCode::Collision: return "Collision";
  case ErrorCode::SelfIntersection: return "SelfIntersection";
  case ErrorCode::OnSlit: return "OnSlit";
  case ErrorCode::BranchFailure: return "BranchFailure";
  case ErrorCode::SlitCollision: return "SlitCollision";
  case ErrorCode::Overflow: return "Overflow";
  case ErrorCode::ResolutionLimit: return "ResolutionLimit";
  case ErrorCode::AmbiguousTranslate: return "AmbiguousTranslate";
  case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

} // namespace cosdyn
