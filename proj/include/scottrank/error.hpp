#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scottrank {

enum class ErrorCode {
  kInvalidSpec,
  kForeignElement,
  kUnknownNode,
  kPrecondition,
  kUncertified,
  kOrderMismatch,
  kInvalidEmbedding,
  kNotClosed,
  kNotAtomicEquiv,
  kMarginTooSmall,
  kEpsilonBound,
  kParentMissing,
  kBetaIllFounded,
  kR5Timeout,
  kBudgetExceeded,
  kParse,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kForeignElement: return "ForeignElement";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kUncertified: return "Uncertified";
    case ErrorCode::kOrderMismatch: return "OrderMismatch";
    case ErrorCode::kInvalidEmbedding: return "InvalidEmbedding";
    case ErrorCode::kNotClosed: return "NotClosed";
    case ErrorCode::kNotAtomicEquiv: return "NotAtomicEquiv";
    case ErrorCode::kMarginTooSmall: return "MarginTooSmall";
    case ErrorCode::kEpsilonBound: return "EpsilonBound";
    case ErrorCode::kParentMissing: return "ParentMissing";
    case ErrorCode::kBetaIllFounded: return "BetaIllFounded";
    case ErrorCode::kR5Timeout: return "R5Timeout";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

// Every library failure is thrown as this.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  bool is_budget() const noexcept {
    return code_ == ErrorCode::kR5Timeout || code_ == ErrorCode::kBudgetExceeded;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace scottrank
