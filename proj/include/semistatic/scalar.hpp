#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace semistatic {

// Exact rational. GMP keeps every value canonical (lowest terms, positive
// denominator) as long as it is built through arithmetic or parse_scalar.
using Scalar = mpq_class;
using Integer = mpz_class;

// Accepts "[-+]digits", "[-+]digits.digits" and "[-+]digits/digits".
// Decimals are converted exactly: "0.125" -> 1/8.
Scalar parse_scalar(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string to_string(const Scalar& value);

std::size_t bit_length(const Integer& value);
std::size_t bit_length(const Scalar& value);

// Upper bound on numerator/denominator bit length. Read once from
// SEMISTATIC_MAX_BITS, default 1'000'000.
std::size_t max_scalar_bits();

// Throws Error(kBitLimit) when the value exceeds max_scalar_bits().
void check_bits(const Integer& value);
void check_bits(const Scalar& value);

}  // namespace semistatic
