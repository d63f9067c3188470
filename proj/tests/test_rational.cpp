#include <doctest.h>

#include "cusemi/rational.hpp"

using namespace cusemi;

TEST_CASE("rationals normalize and compare") {
  Rational a(BigInt(2), BigInt(4));
  CHECK(a.num() == 1);
  CHECK(a.den() == 2);
  CHECK(a == Rational(BigInt(1), BigInt(2)));
  CHECK(Rational(BigInt(-3), BigInt(-6)) == a);
  CHECK(Rational(BigInt(1), BigInt(3)) < a);
  CHECK(a < Rational(1));
  CHECK(Rational(0).is_zero());
}

TEST_CASE("arithmetic stays exact") {
  Rational third(BigInt(1), BigInt(3));
  Rational sixth(BigInt(1), BigInt(6));
  CHECK(third + sixth == Rational(BigInt(1), BigInt(2)));
  CHECK(third - sixth == sixth);
  CHECK(third * Rational(3) == Rational(1));
  CHECK(third / third == Rational(1));
  CHECK((-third).sign() == -1);
  // big denominators survive
  Rational tiny(BigInt(1), BigInt("123456789123456789"));
  CHECK(tiny + tiny == Rational(BigInt(2), BigInt("123456789123456789")));
}

TEST_CASE("parse and format round-trip") {
  for (const char* s : {"0", "1", "-7", "1/2", "-22/7", "355/113"}) {
    CHECK(Rational::parse(s).str() == s);
  }
  CHECK(Rational::parse("4/8").str() == "1/2");
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
  CHECK_THROWS_AS(Rational::parse(""), ParseError);
}
