#include <doctest.h>

#include "telsig/rational.hpp"

using namespace telsig;

TEST_CASE("rational canonical form") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational("3/6").str() == "1/2");
    CHECK(Rational("-12").str() == "-12");
    CHECK(Rational(7).str() == "7");
}

TEST_CASE("rational arithmetic") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK(a.pow(3) == Rational(1, 27));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK_THROWS_AS(a / Rational(0), error);
    CHECK_THROWS_AS(Rational(1, 0), error);
}

TEST_CASE("big values stay exact") {
    Rational big("123456789012345678901234567890/2");
    CHECK((big * Rational(2)).str() == "123456789012345678901234567890");
    Rational f = factorial(25);
    CHECK(f.str() == "15511210043330985984000000");
    CHECK(f / f == Rational(1));
}
