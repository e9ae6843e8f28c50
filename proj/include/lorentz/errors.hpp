#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lorentz {

enum class ErrorCode {
  kInvalidArgument,
  kWitnessMissing,
  kCycleDetected,
  kEmptySprinkle,
  kSegmentNotCausal,
  kNotConnected,
  kBudgetExceeded,
  kNotChronological,
  kUnsupportedBackend,
  kDegenerateStrip,
  kNotARealizer,
  kCurveTooShort,
  kNoHalfwayPoint,
  kMidpointUnavailable,
  kNotComplete,
  kCauchyBudget,
  kParse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kWitnessMissing: return "WitnessMissing";
    case ErrorCode::kCycleDetected: return "CycleDetected";
    case ErrorCode::kEmptySprinkle: return "EmptySprinkle";
    case ErrorCode::kSegmentNotCausal: return "SegmentNotCausal";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNotChronological: return "NotChronological";
    case ErrorCode::kUnsupportedBackend: return "UnsupportedBackend";
    case ErrorCode::kDegenerateStrip: return "DegenerateStrip";
    case ErrorCode::kNotARealizer: return "NotARealizer";
    case ErrorCode::kCurveTooShort: return "CurveTooShort";
    case ErrorCode::kNoHalfwayPoint: return "NoHalfwayPoint";
    case ErrorCode::kMidpointUnavailable: return "MidpointUnavailable";
    case ErrorCode::kNotComplete: return "NotComplete";
    case ErrorCode::kCauchyBudget: return "CauchyBudget";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Oracle search ran out of budget; carries the best value found so far.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double best)
      : Error(ErrorCode::kBudgetExceeded, what), best_(best) {}
  double best_so_far() const noexcept { return best_; }

 private:
  double best_;
};

/// Geodesic construction could not place a midpoint. `hypothesis` names the
/// assumption that failed: "tau-midpoints" (no candidate in the lens) or
/// "compatibility" (candidates exist but none in the strip).
class MidpointUnavailable : public Error {
 public:
  MidpointUnavailable(int level, std::string left, std::string right, std::string hypothesis)
      : Error(ErrorCode::kMidpointUnavailable,
              "level " + std::to_string(level) + " pair (" + left + ", " + right +
                  "), failed hypothesis: " + hypothesis),
        level_(level),
        left_(std::move(left)),
        right_(std::move(right)),
        hypothesis_(std::move(hypothesis)) {}

  int level() const noexcept { return level_; }
  const std::string& left() const noexcept { return left_; }
  const std::string& right() const noexcept { return right_; }
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  int level_;
  std::string left_;
  std::string right_;
  std::string hypothesis_;
};

}  // namespace lorentz
