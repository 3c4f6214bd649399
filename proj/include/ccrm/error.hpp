#pragma once

#include <stdexcept>
#include <string>

namespace ccrm {

/// Failure categories surfaced by the library. The CLI maps ParseError to
/// exit code 2 and everything else to exit code 3.
enum class ErrorCode {
  // grid construction
  NonPositiveSpacing,
  NonCommensurateWindow,
  TooFewNodes,
  BadRatio,
  OutsideWindow,
  // state construction
  SupportOutsideWindow,
  SupportTooWide,
  SupportBelowResolution,
  ZeroDensity,
  NegativeDensity,
  NonLatticeShift,
  ShiftLeavesWindow,
  UnsupportedTopology,
  // operator compilation and evaluation
  IncompatibleGridOperator,
  NotCompilable,
  SampleLengthMismatch,
  NonPositiveG,
  // transport
  GridMismatch,
  NotAPathGraph,
  NotCircle,
  NotQuantized,
  TooLarge,
  // closed forms
  OutOfRange,
  OutOfDomain,
  // cli
  ParseError,
  UnknownScenario,
  // generic
  InvalidArgument,
  Internal,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveSpacing: return "NonPositiveSpacing";
    case ErrorCode::NonCommensurateWindow: return "NonCommensurateWindow";
    case ErrorCode::TooFewNodes: return "TooFewNodes";
    case ErrorCode::BadRatio: return "BadRatio";
    case ErrorCode::OutsideWindow: return "OutsideWindow";
    case ErrorCode::SupportOutsideWindow: return "SupportOutsideWindow";
    case ErrorCode::SupportTooWide: return "SupportTooWide";
    case ErrorCode::SupportBelowResolution: return "SupportBelowResolution";
    case ErrorCode::ZeroDensity: return "ZeroDensity";
    case ErrorCode::NegativeDensity: return "NegativeDensity";
    case ErrorCode::NonLatticeShift: return "NonLatticeShift";
    case ErrorCode::ShiftLeavesWindow: return "ShiftLeavesWindow";
    case ErrorCode::UnsupportedTopology: return "UnsupportedTopology";
    case ErrorCode::IncompatibleGridOperator: return "IncompatibleGridOperator";
    case ErrorCode::NotCompilable: return "NotCompilable";
    case ErrorCode::SampleLengthMismatch: return "SampleLengthMismatch";
    case ErrorCode::NonPositiveG: return "NonPositiveG";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NotAPathGraph: return "NotAPathGraph";
    case ErrorCode::NotCircle: return "NotCircle";
    case ErrorCode::NotQuantized: return "NotQuantized";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Single exception type for all library failures; `code()` identifies the
/// category so callers can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ccrm
