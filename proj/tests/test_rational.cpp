#include "doctest.h"

#include "gdof/errors.hpp"
#include "gdof/rational.hpp"

using gdof::Rational;

TEST_CASE("parse accepts p/q and integers") {
  CHECK(gdof::parse_rational("3/4") == Rational(3, 4));
  CHECK(gdof::parse_rational("6/8") == Rational(3, 4));
  CHECK(gdof::parse_rational("2") == Rational(2));
  CHECK(gdof::parse_rational(" 1/24 ") == Rational(1, 24));
  CHECK(gdof::parse_rational("-1/2") == Rational(-1, 2));
}

TEST_CASE("parse rejects decimals and junk") {
  CHECK_THROWS_AS(gdof::parse_rational("0.5"), gdof::ParseError);
  CHECK_THROWS_AS(gdof::parse_rational("1e3"), gdof::ParseError);
  CHECK_THROWS_AS(gdof::parse_rational("2/0"), gdof::ParseError);
  CHECK_THROWS_AS(gdof::parse_rational(""), gdof::ParseError);
  CHECK_THROWS_AS(gdof::parse_rational("a/b"), gdof::ParseError);
  CHECK_THROWS_AS(gdof::parse_rational("1/2/3"), gdof::ParseError);
}

TEST_CASE("rendering") {
  CHECK(gdof::to_string(Rational(17, 4)) == "17/4");
  CHECK(gdof::to_string(Rational(6)) == "6");
  CHECK(gdof::to_decimal(Rational(1, 3)) == "0.333333333333");
  CHECK(gdof::to_decimal(Rational(2, 3)) == "0.666666666667");
  CHECK(gdof::to_decimal(Rational(17, 4)) == "4.250000000000");
  CHECK(gdof::to_decimal(Rational(-1, 8), 2) == "-0.13");
  CHECK(gdof::to_decimal(Rational(0)) == "0.000000000000");
  CHECK(gdof::to_decimal(Rational(999999, 1000000), 3) == "1.000");
}

TEST_CASE("helpers") {
  CHECK(gdof::positive_part(Rational(-1, 3)) == Rational(0));
  CHECK(gdof::positive_part(Rational(1, 3)) == Rational(1, 3));
  CHECK(gdof::rmax(Rational(1, 2), Rational(2, 3)) == Rational(2, 3));
  CHECK(gdof::rmin(Rational(1, 2), Rational(2, 3)) == Rational(1, 2));
  CHECK(gdof::to_double(Rational(1, 4)) == doctest::Approx(0.25));
}
