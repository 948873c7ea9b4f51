#include "opetope/error.hpp"

namespace opetope {

const char* errorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::ProfileMismatch: return "ProfileMismatch";
    case ErrorCode::UnknownOperation: return "UnknownOperation";
    case ErrorCode::UnknownType: return "UnknownType";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::SymbolCollision: return "SymbolCollision";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::NotCoherent: return "NotCoherent";
    case ErrorCode::DimensionZero: return "DimensionZero";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(errorName(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace opetope
