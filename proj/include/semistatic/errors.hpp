#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semistatic {

enum class ErrorCode {
  kParse,
  kZeroDenominator,
  kDuplicatePoint,
  kMissingPosition,
  kNotConnected,
  kInvalidCycle,
  kSingularSystem,
  kZeroValue,
  kNotSemistatic,
  kNotSquare,
  kInvalidInstance,
  kSizeLimit,
  kInconsistent,
  kNotFullMeasure,
  kShapeMismatch,
  kBitLimit,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace semistatic
