#include <catch2/catch_amalgamated.hpp>

#include "qsc/rational.hpp"

using qsc::Rational;

TEST_CASE("rational normalization and arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
    CHECK(Rational(3, 7) < Rational(1, 2));
    CHECK(Rational(5, 7) > Rational(1, 2));
}

TEST_CASE("rational text round trip") {
    CHECK(Rational(1, 4).str() == "0.25");
    CHECK(Rational(1, 2).str() == "0.5");
    CHECK(Rational(-3, 8).str() == "-0.375");
    CHECK(Rational(1, 3).str() == "1/3");
    CHECK(Rational(7).str() == "7");
    for (auto r : {Rational(1, 3), Rational(22, 7), Rational(-5, 6), Rational(9, 10),
                   Rational(123, 1000), Rational(0)}) {
        CHECK(Rational::parse(r.str()) == r);
    }
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("2/6") == Rational(1, 3));
    CHECK(Rational::parse("1.5") == Rational(3, 2));
    CHECK_THROWS(Rational::parse("0.2x"));
}
