#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hahn/errors.hpp"
#include "hahn/rational.hpp"

#include <random>
#include <stdexcept>

using namespace hahn;

TEST_CASE("construction normalizes to lowest terms with positive denominator") {
    const Rational r(6, -4);
    CHECK(r.num() == -3);
    CHECK(r.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(2, 2) == Rational(1));
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(-1, 3));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("ordering by cross multiplication") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(abs(Rational(-7, 2)) == Rational(7, 2));
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(6, 3).floor() == 2);
}

TEST_CASE("from_double recovers the exact dyadic value") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.25) == Rational(1, 4));
    CHECK(Rational::from_double(-3.0) == Rational(-3));
    // 0.3 is not 3/10 in binary; the exact value must round-trip.
    const Rational r = Rational::from_double(0.3);
    CHECK(r != Rational(3, 10));
    CHECK(r.to_double() == 0.3);
    CHECK_THROWS_AS(Rational::from_double(std::numeric_limits<double>::infinity()),
                    std::domain_error);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int i = 0; i < 200; ++i) {
        const double v = dist(rng);
        CHECK(Rational::from_double(v).to_double() == v);
    }
}

TEST_CASE("parse and str round-trip") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-12") == Rational(-12));
    CHECK(Rational::parse("-6/4") == Rational(-3, 2));
    CHECK(Rational(5, 3).str() == "5/3");
    CHECK(Rational(-4).str() == "-4");
    CHECK_THROWS_AS(Rational::parse("1/0"), SyntaxError);
    CHECK_THROWS_AS(Rational::parse("a/2"), SyntaxError);
    CHECK_THROWS_AS(Rational::parse(""), SyntaxError);
}

TEST_CASE("extended rationals model +infinity") {
    const ExtRational inf = ExtRational::infinity();
    const ExtRational two{Rational(2)};
    CHECK(inf.is_infinite());
    CHECK(two < inf);
    CHECK(inf + two == inf);
    CHECK(two + ExtRational(Rational(1)) == ExtRational(Rational(3)));
    CHECK(min(inf, two) == two);
    CHECK(inf - Rational(5) == inf);
    CHECK(two - Rational(5) == ExtRational(Rational(-3)));
    CHECK(inf.str() == "inf");
    CHECK_THROWS_AS(inf.value(), std::domain_error);
}
