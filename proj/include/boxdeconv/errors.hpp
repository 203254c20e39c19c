#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boxdeconv {

enum class ErrorCode {
  EmptyList,
  DimensionMismatch,
  NotSpanning,
  NotSpanningSub,
  NotRegular,
  NotRegularShifted,
  NotGeneric,
  PointOutsideZonotope,
  PointOutsideAlcove,
  DirectionOutsideCone,
  SearchExhausted,
  ResonantParameter,
  ParameterTooLarge,
  TruncationNotConverged,
  NumericDivergence,
  LatticePointNotCovered,
  NotSalient,
  OnConeBoundary,
  NuNotCovered,
  Not1D,
  InvalidInput,
  Internal,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSpanning: return "NotSpanning";
    case ErrorCode::NotSpanningSub: return "NotSpanningSub";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotRegularShifted: return "NotRegularShifted";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::PointOutsideZonotope: return "PointOutsideZonotope";
    case ErrorCode::PointOutsideAlcove: return "PointOutsideAlcove";
    case ErrorCode::DirectionOutsideCone: return "DirectionOutsideCone";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::ResonantParameter: return "ResonantParameter";
    case ErrorCode::ParameterTooLarge: return "ParameterTooLarge";
    case ErrorCode::TruncationNotConverged: return "TruncationNotConverged";
    case ErrorCode::NumericDivergence: return "NumericDivergence";
    case ErrorCode::LatticePointNotCovered: return "LatticePointNotCovered";
    case ErrorCode::NotSalient: return "NotSalient";
    case ErrorCode::OnConeBoundary: return "OnConeBoundary";
    case ErrorCode::NuNotCovered: return "NuNotCovered";
    case ErrorCode::Not1D: return "Not1D";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

/// Domain error raised by every library operation. The code names the
/// violated precondition; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace boxdeconv
