#pragma once

#include <stdexcept>
#include <string>

namespace opetope {

enum class ErrorCode {
  ProfileMismatch,
  UnknownOperation,
  UnknownType,
  ArityMismatch,
  IncompleteTable,
  TypeMismatch,
  SymbolCollision,
  Unbounded,
  BudgetExceeded,
  ValidationFailed,
  SyntaxError,
  UnknownCell,
  NotCoherent,
  DimensionZero,
};

const char* errorName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace opetope
