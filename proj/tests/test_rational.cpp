#include <doctest.h>

#include <sstream>

#include "measure_modes/rational.hpp"

using measure_modes::Rational;

TEST_CASE("rationals are kept in lowest terms with a positive denominator") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(3, -6).str() == "-1/2");
  CHECK(Rational(0, 5).str() == "0/1");
  CHECK(Rational(7).str() == "7/1");
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts p/q, integers and finite decimals") {
  CHECK(Rational::parse("3/12") == Rational(1, 4));
  CHECK(Rational::parse("-5") == Rational(-5));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("-1.5") == Rational(-3, 2));
  CHECK(Rational::parse(" 2/3 ") == Rational(2, 3));
  for (const char* bad : {"", "1/", "/2", "a/b", "1/0", "1.2.3", "0.", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("str and parse round-trip exactly") {
  for (const char* text : {"0/1", "1/3", "-22/7", "9223372036854775807/2", "123456789012345678901234567891/7"}) {
    CHECK(Rational::parse(text).str() == text);
  }
}

TEST_CASE("arithmetic is exact") {
  const Rational third(1, 3), sixth(1, 6);
  CHECK(third + sixth == Rational(1, 2));
  CHECK(third - sixth == sixth);
  CHECK(third * sixth == Rational(1, 18));
  CHECK(third / sixth == Rational(2));
  CHECK(-third == Rational(-1, 3));
  CHECK_THROWS_AS(third / Rational(0), std::domain_error);
}

TEST_CASE("values beyond 64 bits switch to the wide representation and come back") {
  const Rational big(INT64_MAX);
  const Rational sq = big * big;
  CHECK(sq.str() == "85070591730234615847396907784232501249/1");
  CHECK(sq > big);
  CHECK(sq / big == big);
  CHECK((sq / big).is_integer());
  const Rational tiny = Rational(1) / sq;
  CHECK(tiny * sq == Rational(1));
  CHECK(tiny.sign() > 0);
  CHECK(tiny < Rational(1, INT64_MAX));
  CHECK(-sq < Rational(INT64_MIN + 1));
  CHECK(Rational(INT64_MAX) + Rational(1) == Rational::parse("9223372036854775808"));
}

TEST_CASE("ordering and helpers") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(measure_modes::max(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
  CHECK(measure_modes::min(Rational(-1, 3), Rational(1, 2)) == Rational(-1, 3));
  CHECK(measure_modes::abs(Rational(-2, 5)) == Rational(2, 5));
  CHECK(measure_modes::positive_part(Rational(-2, 5)).is_zero());
  CHECK(measure_modes::floor_to_int(Rational(-7, 2)) == -4);
  CHECK(measure_modes::floor_to_int(Rational(7, 2)) == 3);
  CHECK(measure_modes::dyadic(3, 3) == Rational(3, 8));
  CHECK(measure_modes::dyadic(1, 70) == Rational::parse("1/1180591620717411303424"));
}

TEST_CASE("decimal rendering truncates") {
  CHECK(Rational(1, 3).decimal(4) == "0.3333");
  CHECK(Rational(-3, 2).decimal(2) == "-1.50");
  CHECK(Rational(5).decimal(0) == "5");
  std::ostringstream os;
  os << Rational(2, 6);
  CHECK(os.str() == "1/3");
}
