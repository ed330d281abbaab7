#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hahn/errors.hpp"
#include "hahn/oracle.hpp"
#include "hahn/partition.hpp"
#include "hahn/text.hpp"
#include "test_util.hpp"

#include <cmath>
#include <set>

using namespace hahn;
using namespace hahn::testutil;

TEST_CASE("naive convolution on fixed inputs") {
    const HahnNumber a = parse_number("1 + d^(1)");
    CHECK(print_number(oracle::mul_naive(a, a)) == "1 + 2*d^(1) + d^(2)");
    CHECK(print_number(oracle::mul_naive(HahnNumber::monomial(1.0, Rational(-1)),
                                         HahnNumber::d())) == "1");
    CHECK(oracle::mul_naive(a, HahnNumber()).is_zero());
}

TEST_CASE("naive convolution respects the truncation rule") {
    const HahnNumber x =
        HahnNumber::make({Term{Rational(-1), 2.0}, Term{Rational(1), 3.0}}, ExtRational(Rational(4)));
    const HahnNumber y =
        HahnNumber::make({Term{Rational(0), 1.0}, Term{Rational(2), 1.0}}, ExtRational(Rational(6)));
    const HahnNumber lhs = x * y;
    const HahnNumber rhs = oracle::mul_naive(x, y);
    CHECK(lhs.cutoff() == ExtRational(Rational(4)));
    CHECK(lhs == rhs);
}

TEST_CASE("convolution agrees with the oracle") {
    // Dyadic inputs sum exactly in any order, so agreement is bitwise.
    ExactGen exact(2024);
    for (int i = 0; i < 500; ++i) {
        const HahnNumber x = exact.number(8, true);
        const HahnNumber y = exact.number(8, true);
        CHECK(x * y == oracle::mul_naive(x, y));
    }

    // Arbitrary doubles may be summed in different orders; exponent sets must
    // still match and each coefficient may drift by one rounding per product.
    MessyGen messy(2025);
    for (int i = 0; i < 200; ++i) {
        const HahnNumber x = messy.number();
        const HahnNumber y = messy.number();
        const HahnNumber fast = x * y;
        const HahnNumber slow = oracle::mul_naive(x, y);
        REQUIRE(fast.terms().size() == slow.terms().size());
        const double products =
            static_cast<double>(x.terms().size()) * static_cast<double>(y.terms().size());
        for (std::size_t t = 0; t < fast.terms().size(); ++t) {
            CHECK(fast.terms()[t].exp == slow.terms()[t].exp);
            const double a = fast.terms()[t].coef;
            const double b = slow.terms()[t].coef;
            const double scale = std::max({std::abs(a), std::abs(b), 1.0});
            CHECK(std::abs(a - b) <= products * std::ldexp(scale, -52));
        }
    }
}

TEST_CASE("partial sums of the geometric series") {
    const HahnNumber x = parse_number("0.5 + d^(1)");
    const HahnNumber s = oracle::partial_sums(PowerSeries::geometric(), x, 60, Rational(3));
    CHECK(std::abs(s.at(Rational(0)) - 2.0) < 1e-15);
    CHECK(std::abs(s.at(Rational(1)) - 4.0) < 1e-15);
    // The exact tail at d^2 after 60 terms is 3784 * 2^-59, just under 1e-14.
    CHECK(std::abs(s.at(Rational(2)) - 8.0) < 1e-14);
    CHECK(s.cutoff() == ExtRational(Rational(3)));
}

TEST_CASE("partial sum of depth zero is the constant coefficient") {
    const HahnNumber s =
        oracle::partial_sums(PowerSeries::geometric(), parse_number("0.5 + d^(1)"), 0, Rational(3));
    CHECK(s == HahnNumber::make({Term{Rational(0), 1.0}}, ExtRational(Rational(3))));
}

TEST_CASE("partial sums terminate exactly under the cutoff") {
    const HahnNumber s =
        oracle::partial_sums(PowerSeries::exponential(), HahnNumber::d(), 7, Rational(4));
    const HahnNumber expected = HahnNumber::make({Term{Rational(0), 1.0},
                                                  Term{Rational(1), 1.0},
                                                  Term{Rational(2), 0.5},
                                                  Term{Rational(3), 1.0 / 6.0}},
                                                 ExtRational(Rational(4)));
    CHECK(s == expected);
}

TEST_CASE("partial sums stabilize inside the radius") {
    const PowerSeries geo = PowerSeries::geometric();
    const HahnNumber x = parse_number("0.5 + d^(1)");
    const HahnNumber s1 = oracle::partial_sums(geo, x, 80, Rational(3));
    const HahnNumber s2 = oracle::partial_sums(geo, x, 160, Rational(3));
    for (int q = 0; q < 3; ++q) {
        CHECK(std::abs(s1.at(Rational(q)) - s2.at(Rational(q))) <= 1e-9);
    }
}

TEST_CASE("partial sums blow up at the minimal divergent exponent") {
    const PowerSeries geo = PowerSeries::geometric();
    const HahnNumber x = parse_number("1.5 + d^(1)");
    const HahnNumber s1 = oracle::partial_sums(geo, x, 40, Rational(1));
    const HahnNumber s2 = oracle::partial_sums(geo, x, 80, Rational(1));
    CHECK(std::abs(s2.at(Rational(0)) - s1.at(Rational(0))) > 1.0);
    CHECK(std::abs(s2.at(Rational(0))) > std::abs(s1.at(Rational(0))));
}

TEST_CASE("partial sum budgets") {
    const PowerSeries geo = PowerSeries::geometric();
    const HahnNumber x = parse_number("0.5 + d^(1)");
    CHECK_THROWS_AS(oracle::partial_sums(geo, x, 1000001, Rational(3)), BudgetError);
    CHECK_THROWS_AS(oracle::partial_sums(geo, x, -1, Rational(3)), std::invalid_argument);
    oracle::OracleConfig tight;
    tight.max_terms = 2;
    CHECK_THROWS_AS(oracle::partial_sums(geo, x, 60, Rational(8), tight), BudgetError);
}

TEST_CASE("exhaustive fraction enumeration") {
    const auto single = oracle::enumerate_reduced_fractions(1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].first == Rational(0));
    CHECK(single[0].second == 1);

    const auto upto3 = oracle::enumerate_reduced_fractions(3);
    std::set<Rational> block3;
    for (const auto& [value, index] : upto3) {
        if (index == 3) block3.insert(value);
    }
    CHECK(block3 == std::set<Rational>{Rational(-2), Rational(-1, 2), Rational(1, 2), Rational(2)});

    const auto upto5 = oracle::enumerate_reduced_fractions(5);
    CHECK(upto5.size() == 1 + 2 + 4 + 4 + 8);
    std::vector<Rational> block5;
    for (const auto& [value, index] : upto5) {
        if (index == 5) block5.push_back(value);
    }
    CHECK(block5 == diagonal_block(5));

    // Sorted by block, then by value inside each block.
    for (std::size_t i = 1; i < upto5.size(); ++i) {
        const bool ordered = upto5[i - 1].second < upto5[i].second ||
                             (upto5[i - 1].second == upto5[i].second &&
                              upto5[i - 1].first < upto5[i].first);
        CHECK(ordered);
    }

    CHECK_THROWS_AS(oracle::enumerate_reduced_fractions(0), std::invalid_argument);
}
