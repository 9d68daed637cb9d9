#include <doctest.h>

#include <random>

#include "latreg/exactnum.hpp"

using namespace latreg;

TEST_SUITE("exactnum") {

TEST_CASE("parse_rational accepts integers, fractions and decimals") {
  CHECK(parse_rational("-12") == -12);
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("-0.3") == Rational(-3, 10));
  CHECK(parse_rational("+2.5E3") == 2500);
  CHECK(parse_rational(".5") == Rational(1, 2));
  const Rational tiny = parse_rational("1e-20 ");
  CHECK(tiny.get_num() == 1);
  CHECK(tiny.get_den() == BigInt("100000000000000000000"));
}

TEST_CASE("parse errors name the token") {
  for (const char* bad : {"", "abc", "1/0", "1.2.3", "--1", "1e", "3/x", "0x10"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), ParseError);
  }
  try {
    parse_rational("12q");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.token() == "12q");
    CHECK(std::string(e.what()).find("12q") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_integer("1.5"), ParseError);
  CHECK(parse_integer(" -123456789012345678901234567890 ") == BigInt("-123456789012345678901234567890"));
}

TEST_CASE("truncate keeps N binary digits toward zero") {
  CHECK(truncate(Rational(3, 4), 2).value() == Rational(3, 4));
  CHECK(truncate(Rational(3, 4), 2).scaled == 3);
  CHECK(truncate("-0.3", 2).value() == Rational(-1, 4));
  CHECK(truncate("-0.3", 2).scaled == -1);
  CHECK(truncate(Rational(1, 3), 4).value() == Rational(5, 16));
  CHECK(truncate(Rational(7, 3), 0).value() == 2);
  CHECK(truncate(Rational(-7, 3), 0).value() == -2);
  CHECK(truncate(Rational(0), 10).scaled == 0);
}

TEST_CASE("scale_to_integer") {
  CHECK(scale_to_integer(truncate("0.75", 2), 1) == 3);
  CHECK(scale_to_integer(truncate("0.75", 2), 5) == 15);
  CHECK(scale_to_integer(truncate("-0.3", 2), 2) == -2);
}

TEST_CASE("truncation properties on random rationals") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 2000; ++t) {
    const long num = static_cast<long>(gen() % 2000001) - 1000000;
    const long den = static_cast<long>(gen() % 99999) + 1;
    const unsigned bits = static_cast<unsigned>(gen() % 65);
    const Rational x = make_rational(num, den);
    const FixedPointReal t1 = truncate(x, bits);
    const Rational v = t1.value();
    CAPTURE(num);
    CAPTURE(den);
    CAPTURE(bits);
    const Rational err = abs(x - v);
    CHECK(err <= Rational(1) / Rational(pow2(bits)));
    CHECK(abs(v) <= abs(x));
    CHECK(truncate(v, bits) == t1);
    CHECK((sgn(v) == 0 || sgn(v) == sgn(x)));
    const Rational scaled = v * Rational(pow2(bits));
    CHECK(scaled.get_den() == 1);
  }
}

TEST_CASE("formatting") {
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_string(Rational(6, 3)) == "2");
  CHECK(to_string(BigInt(-17)) == "-17");
  CHECK(to_decimal(Rational(2, 3), 6) == "0.666667");
  CHECK(to_decimal(Rational(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(Rational(1), 3) == "1.000");
  CHECK(to_decimal(Rational(-1, 1000), 2) == "0.00");
}

TEST_CASE("integer helpers") {
  CHECK(pow2(0) == 1);
  CHECK(pow2(70) == BigInt("1180591620717411303424"));
  CHECK(isqrt_ceil(0) == 0);
  CHECK(isqrt_ceil(1) == 1);
  CHECK(isqrt_ceil(4) == 2);
  CHECK(isqrt_ceil(5) == 3);
  CHECK(isqrt_ceil(30) == 6);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(2) == 1);
  CHECK(ceil_log2(3) == 2);
  CHECK(ceil_log2(30) == 5);
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(ceil(Rational(-7, 2)) == -3);
  CHECK(ceil(Rational(7, 2)) == 4);
  CHECK(bit_length(BigInt(0)) == 0);
  CHECK(bit_length(BigInt(255)) == 8);
}

}
