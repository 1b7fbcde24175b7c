#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cosdyn {

enum class ErrorCode {
  InvalidArgument,
  NoConvergence,
  DegenerateJacobian,
  NotInBasin,
  BranchAmbiguity,
  NotTypeA,
  NotTypeC,
  NotTypeD,
  WrongEntryTime,
  ContinuationStall,
  ClassDrift,
  Collision,
  SelfIntersection,
  OnSlit,
  BranchFailure,
  SlitCollision,
  Overflow,
  ResolutionLimit,
  AmbiguousTranslate,
  BudgetExceeded,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers can branch on the kind without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace cosdyn
