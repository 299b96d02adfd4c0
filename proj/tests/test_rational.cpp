#include <catch2/catch_amalgamated.hpp>

#include "kcore/rational.hpp"

using kcore::Rational;
using kcore::binomial;
using kcore::format_rational;
using kcore::parse_rational;

TEST_CASE("parse_rational reads integers and fractions") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(parse_rational("+5") == Rational(5));
    CHECK(parse_rational("3/10") == Rational(3, 10));
    CHECK(parse_rational("-3/10") == Rational(-3, 10));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational(" 2/3 ") == Rational(2, 3));
    // Leading zeros are decimal, never octal.
    CHECK(parse_rational("007") == Rational(7));
    CHECK(parse_rational("3/010") == Rational(3, 10));
}

TEST_CASE("parse_rational reads decimal strings exactly") {
    CHECK(parse_rational("0.1") == Rational(1, 10));
    CHECK(parse_rational("-0.25") == Rational(-1, 4));
    CHECK(parse_rational(".5") == Rational(1, 2));
    CHECK(parse_rational("2.") == Rational(2));
    CHECK(parse_rational("1e3") == Rational(1000));
    CHECK(parse_rational("2.5e-1") == Rational(1, 4));
    CHECK(parse_rational("0.1e2") == Rational(10));
    // 0.3 must become exactly 3/10, not the nearest double.
    CHECK(parse_rational("0.3") == Rational(3, 10));
}

TEST_CASE("parse_rational rejects malformed input") {
    CHECK_THROWS_AS(parse_rational(""), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("abc"), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("1/0"), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("1/2/3"), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("1.2.3"), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("."), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("1e"), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("1e100000"), kcore::input_error);
    CHECK_THROWS_AS(parse_rational("0.5/2"), kcore::input_error);
}

TEST_CASE("format_rational produces reduced fractions") {
    CHECK(format_rational(Rational(1, 10)) == "1/10");
    CHECK(format_rational(Rational(2, 4)) == "1/2");
    CHECK(format_rational(Rational(-7)) == "-7");
    CHECK(format_rational(Rational(0)) == "0");
    // Round trip through text is lossless.
    const Rational x(355, 113);
    CHECK(parse_rational(format_rational(x)) == x);
}

TEST_CASE("binomial handles edge cases by returning zero") {
    CHECK(binomial(4, 2) == Rational(6));
    CHECK(binomial(5, 0) == Rational(1));
    CHECK(binomial(5, 5) == Rational(1));
    CHECK(binomial(3, -1) == Rational(0));
    CHECK(binomial(3, 4) == Rational(0));
    CHECK(binomial(0, 0) == Rational(1));
    CHECK(binomial(24, 12) == Rational(2704156));
}
