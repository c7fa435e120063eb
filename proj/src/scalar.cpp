#include "semistatic/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>

#include "semistatic/errors.hpp"

namespace semistatic {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kDuplicatePoint: return "DuplicatePoint";
    case ErrorCode::kMissingPosition: return "MissingPosition";
    case ErrorCode::kNotConnected: return "NotConnected";
    case ErrorCode::kInvalidCycle: return "InvalidCycle";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kZeroValue: return "ZeroValue";
    case ErrorCode::kNotSemistatic: return "NotSemistatic";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kInvalidInstance: return "InvalidInstance";
    case ErrorCode::kSizeLimit: return "SizeLimit";
    case ErrorCode::kInconsistent: return "Inconsistent";
    case ErrorCode::kNotFullMeasure: return "NotFullMeasure";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kBitLimit: return "BitLimit";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void malformed(std::string_view text) {
  throw Error(ErrorCode::kParse, "malformed scalar '" + std::string(text) + "'");
}

Integer parse_digits(std::string_view digits) { return Integer(std::string(digits), 10); }

}  // namespace

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.front()))) body.remove_prefix(1);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);

  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) malformed(text);

  Scalar result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) malformed(text);
    Integer q = parse_digits(den);
    if (q == 0) {
      throw Error(ErrorCode::kZeroDenominator, "zero denominator in '" + std::string(text) + "'");
    }
    result = Scalar(parse_digits(num), q);
    result.canonicalize();
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) malformed(text);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) malformed(text);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer numerator = (whole.empty() ? Integer(0) : parse_digits(whole)) * scale +
                        (frac.empty() ? Integer(0) : parse_digits(frac));
    result = Scalar(numerator, scale);
    result.canonicalize();
  } else {
    if (!all_digits(body)) malformed(text);
    result = Scalar(parse_digits(body));
  }
  if (negative) result = -result;
  check_bits(result);
  return result;
}

std::string to_string(const Scalar& value) { return value.get_str(10); }

std::size_t bit_length(const Integer& value) {
  return value == 0 ? 0 : mpz_sizeinbase(value.get_mpz_t(), 2);
}

std::size_t bit_length(const Scalar& value) {
  return std::max(bit_length(value.get_num()), bit_length(value.get_den()));
}

std::size_t max_scalar_bits() {
  static const std::size_t limit = [] {
    constexpr std::size_t kDefault = 1'000'000;
    const char* env = std::getenv("SEMISTATIC_MAX_BITS");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || parsed == 0) return kDefault;
    return static_cast<std::size_t>(parsed);
  }();
  return limit;
}

void check_bits(const Integer& value) {
  if (bit_length(value) > max_scalar_bits()) {
    throw Error(ErrorCode::kBitLimit, "scalar exceeds " + std::to_string(max_scalar_bits()) +
                                          " bits (SEMISTATIC_MAX_BITS)");
  }
}

void check_bits(const Scalar& value) {
  check_bits(value.get_num());
  check_bits(value.get_den());
}

}  // namespace semistatic
