#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latreg {

// GMP supplies the unbounded integer and canonical-form rational types.
// mpq_class keeps results of arithmetic reduced; values built from a raw
// numerator/denominator pair go through make_rational().
using BigInt = mpz_class;
using Rational = mpq_class;

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;  // row-major
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

class ParseError : public std::invalid_argument {
 public:
  ParseError(std::string token, const std::string& what)
      : std::invalid_argument(what + ": '" + token + "'"), token_(std::move(token)) {}

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

/// Parses an exact rational from text. Accepts integers ("-12"), fractions
/// ("3/4", "-7/2"), and decimals with optional exponent ("-0.3", "1e-20",
/// "+2.5E3"). Surrounding whitespace is ignored. Never goes through binary
/// floating point.
Rational parse_rational(std::string_view text);

/// Parses a signed decimal integer; anything else is a ParseError.
BigInt parse_integer(std::string_view text);

Rational make_rational(const BigInt& num, const BigInt& den);

std::string to_string(const BigInt& value);
/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& value);

/// Exact decimal rendering with `digits` fractional digits, rounded half away
/// from zero. Used for rates and thresholds in text outputs.
std::string to_decimal(const Rational& value, unsigned digits);

/// A real number held exactly as scaled / 2^bits.
struct FixedPointReal {
  BigInt scaled;
  unsigned bits = 0;

  Rational value() const;
  friend bool operator==(const FixedPointReal&, const FixedPointReal&) = default;
};

/// sign(x) * floor(2^bits * |x|) / 2^bits, i.e. keep `bits` binary digits
/// after the point and truncate toward zero.
FixedPointReal truncate(const Rational& x, unsigned bits);
FixedPointReal truncate(std::string_view x, unsigned bits);

/// extraFactor * scaled, the integer 2^bits * extraFactor * x_N.
BigInt scale_to_integer(const FixedPointReal& x, const BigInt& extraFactor);

BigInt pow2(unsigned long exponent);
BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);
/// ceil(sqrt(x)) for x >= 0.
BigInt isqrt_ceil(const BigInt& x);
/// ceil(log2(x)) for x >= 1.
unsigned ceil_log2(std::uint64_t x);
std::size_t bit_length(const BigInt& x);

}  // namespace latreg
