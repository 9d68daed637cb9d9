#include "latreg/exactnum.hpp"

#include <cctype>
#include <limits>

namespace latreg {
namespace {

constexpr long kMaxExponent = 1'000'000;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

BigInt digits_to_int(std::string_view s) {
  BigInt out;
  out.set_str(std::string(s), 10);
  return out;
}

BigInt pow10(unsigned long e) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, e);
  return out;
}

}  // namespace

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

BigInt parse_integer(std::string_view text) {
  const std::string_view t = trim(text);
  std::string_view body = t;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body)) throw ParseError(std::string(t), "malformed integer");
  BigInt v = digits_to_int(body);
  return negative ? BigInt(-v) : v;
}

Rational parse_rational(std::string_view text) {
  const std::string_view t = trim(text);
  const std::string token(t);
  std::string_view body = t;
  bool negative = false;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.empty()) throw ParseError(token, "malformed number");

  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError(token, "malformed fraction");
    const BigInt d = digits_to_int(den);
    if (d == 0) throw ParseError(token, "zero denominator");
    const BigInt n = digits_to_int(num);
    return make_rational(negative ? BigInt(-n) : n, d);
  }

  long exponent = 0;
  if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp = body.substr(e + 1);
    body = body.substr(0, e);
    bool expNegative = false;
    if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
      expNegative = exp.front() == '-';
      exp.remove_prefix(1);
    }
    if (!all_digits(exp) || exp.size() > 7) throw ParseError(token, "malformed exponent");
    exponent = std::stol(std::string(exp));
    if (expNegative) exponent = -exponent;
  }

  std::string_view intPart = body;
  std::string_view fracPart;
  if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    intPart = body.substr(0, dot);
    fracPart = body.substr(dot + 1);
  }
  if (intPart.empty() && fracPart.empty()) throw ParseError(token, "malformed number");
  if ((!intPart.empty() && !all_digits(intPart)) || (!fracPart.empty() && !all_digits(fracPart))) {
    throw ParseError(token, "malformed number");
  }

  const std::string digits = std::string(intPart) + std::string(fracPart);
  BigInt mantissa = digits_to_int(digits);
  if (negative) mantissa = -mantissa;
  const long scale = exponent - static_cast<long>(fracPart.size());
  if (scale > kMaxExponent || scale < -kMaxExponent) throw ParseError(token, "exponent out of range");
  if (scale >= 0) return Rational(mantissa * pow10(static_cast<unsigned long>(scale)));
  return make_rational(mantissa, pow10(static_cast<unsigned long>(-scale)));
}

std::string to_string(const BigInt& value) { return value.get_str(10); }

std::string to_string(const Rational& input) {
  Rational value(input);
  value.canonicalize();
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

std::string to_decimal(const Rational& value, unsigned digits) {
  const BigInt scale = pow10(digits);
  const Rational scaled = abs(value) * scale;
  // round half away from zero on the magnitude
  BigInt q = floor(scaled + Rational(1, 2));
  std::string s = q.get_str(10);
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (sgn(value) < 0 && q != 0) s.insert(0, "-");
  return s;
}

Rational FixedPointReal::value() const { return make_rational(scaled, pow2(bits)); }

FixedPointReal truncate(const Rational& x, unsigned bits) {
  BigInt shifted;
  mpz_mul_2exp(shifted.get_mpz_t(), x.get_num_mpz_t(), bits);
  BigInt q;
  mpz_tdiv_q(q.get_mpz_t(), shifted.get_mpz_t(), x.get_den_mpz_t());
  return FixedPointReal{q, bits};
}

FixedPointReal truncate(std::string_view x, unsigned bits) { return truncate(parse_rational(x), bits); }

BigInt scale_to_integer(const FixedPointReal& x, const BigInt& extraFactor) { return extraFactor * x.scaled; }

BigInt pow2(unsigned long exponent) {
  BigInt out;
  mpz_setbit(out.get_mpz_t(), exponent);
  return out;
}

BigInt floor(const Rational& x) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt ceil(const Rational& x) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

BigInt isqrt_ceil(const BigInt& x) {
  if (x < 0) throw std::domain_error("isqrt_ceil of a negative value");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  if (r * r < x) ++r;
  return r;
}

unsigned ceil_log2(std::uint64_t x) {
  if (x == 0) throw std::domain_error("ceil_log2 of zero");
  unsigned k = 0;
  while (k < 64 && (std::uint64_t{1} << k) < x) ++k;
  return k;
}

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return mpz_sizeinbase(x.get_mpz_t(), 2);
}

}  // namespace latreg
