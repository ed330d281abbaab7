#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hahn/errors.hpp"
#include "hahn/seminorm.hpp"
#include "hahn/text.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace hahn;
using namespace hahn::testutil;

TEST_CASE("gamma seminorm over diagonal prefixes") {
    const Partition p = Partition::diagonal();
    const HahnNumber x = parse_number("3*d^(-4) + 2*d^(1/2)");
    CHECK(gamma_seminorm(p, 5, x) == 3.0);
    CHECK(gamma_seminorm(p, 4, x) == 2.0);  // -4 enters only at block 5
    CHECK(gamma_seminorm(p, 2, x) == 0.0);
    CHECK(gamma_seminorm(p, 5, HahnNumber::monomial(1.0, Rational(100))) == 0.0);
    for (long long n = 1; n <= 6; ++n) CHECK(gamma_seminorm(p, n, HahnNumber()) == 0.0);
}

TEST_CASE("gamma seminorm needs the prefix below the cutoff") {
    const Partition p = Partition::diagonal();
    const HahnNumber x = HahnNumber::make({{Rational(0), 1.0}}, ExtRational(Rational(3)));
    CHECK(gamma_seminorm(p, 3, x) == 1.0);  // max of block 3 is 2 < 3
    CHECK_THROWS_AS(gamma_seminorm(p, 4, x), CutoffError);
    CHECK(gamma_seminorm(p, 4, HahnNumber()) == 0.0);  // exact zero knows everything
}

TEST_CASE("u seminorm over stored exponents") {
    const HahnNumber x = parse_number("3*d^(-4) + 2*d^(1/2)");
    CHECK(u_seminorm(Rational(0), x) == 3.0);
    CHECK(u_seminorm(Rational(1), x) == 3.0);
    CHECK(u_seminorm(Rational(-5), x) == 0.0);
    CHECK(u_seminorm(Rational(1), HahnNumber::monomial(2.0, Rational(3))) == 0.0);
    const HahnNumber t = HahnNumber::make({{Rational(0), 1.0}}, ExtRational(Rational(2)));
    CHECK(u_seminorm(Rational(1), t) == 1.0);
    CHECK_THROWS_AS(u_seminorm(Rational(2), t), CutoffError);
}

TEST_CASE("mu picks the smallest n with 1/n strictly below r") {
    CHECK(mu(0.3) == 4);
    CHECK(mu(0.5) == 3);  // 1/2 < 0.5 fails, so 2 is not enough
    CHECK(mu(2.0) == 1);
    CHECK(mu(1.0) == 2);
    CHECK(mu(0.25) == 5);
    // double(1/3) is slightly below 1/3, so 1/3 < r fails as well.
    CHECK(mu(1.0 / 3.0) == 4);
    CHECK(mu(1e6) == 1);
    CHECK_THROWS_AS(mu(0.0), std::domain_error);
    CHECK_THROWS_AS(mu(-1.0), std::domain_error);
    CHECK_THROWS_AS(mu(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("seminorm axioms hold exactly") {
    const Partition p = Partition::diagonal();
    MessyGen gen(404);
    std::uniform_real_distribution<double> scalar(-4.0, 4.0);
    std::uniform_int_distribution<int> index(1, 8);
    int nontrivial = 0;
    for (int i = 0; i < 1000; ++i) {
        const HahnNumber x = gen.number();
        const HahnNumber y = gen.number();
        const double a = scalar(gen.rng());
        const long long n = index(gen.rng());
        const Rational r(index(gen.rng()), 2);

        const double gx = gamma_seminorm(p, n, x);
        const double gy = gamma_seminorm(p, n, y);
        CHECK(gx >= 0.0);
        if (a != 0.0) CHECK(gamma_seminorm(p, n, x.scaled(a)) == std::abs(a) * gx);
        CHECK(gamma_seminorm(p, n, x + y) <= gx + gy);

        const double ux = u_seminorm(r, x);
        const double uy = u_seminorm(r, y);
        CHECK(ux >= 0.0);
        if (a != 0.0) CHECK(u_seminorm(r, x.scaled(a)) == std::abs(a) * ux);
        CHECK(u_seminorm(r, x + y) <= ux + uy);
        if (gx > 0.0 || ux > 0.0) ++nontrivial;
    }
    CHECK(nontrivial > 300);  // the sample space genuinely exercises the axioms
}

TEST_CASE("seminorms are monotone in their index") {
    const Partition p = Partition::diagonal();
    MessyGen gen(405);
    for (int i = 0; i < 300; ++i) {
        const HahnNumber x = gen.number();
        for (long long n = 1; n < 8; ++n) {
            CHECK(gamma_seminorm(p, n, x) <= gamma_seminorm(p, n + 1, x));
        }
        for (int k = -4; k < 4; ++k) {
            CHECK(u_seminorm(Rational(k, 2), x) <= u_seminorm(Rational(k + 1, 2), x));
        }
    }
}

TEST_CASE("weak pseudo-ball membership") {
    const Partition p = Partition::diagonal();
    const HahnNumber zero;
    for (double r : {0.1, 0.25, 1.0}) {
        // max of block 1 is 0, so the point is (r/2) * d^0.
        const HahnNumber y = HahnNumber::real(r / 2.0);
        CHECK(in_gamma_ball(p, zero, r, y));
        CHECK(in_gamma_ball(p, zero, r, zero));
        const HahnNumber edge =
            zero + HahnNumber::monomial(r, p.prefix(mu(r)).front());
        CHECK_FALSE(in_gamma_ball(p, zero, r, edge));
    }
    const HahnNumber c = parse_number("1 + 2*d^(1)");
    CHECK(in_gamma_ball(p, c, 0.5, c + HahnNumber::real(0.2)));
    CHECK_FALSE(in_gamma_ball(p, c, 0.5, c + HahnNumber::real(0.7)));
}

TEST_CASE("locally uniform pseudo-ball membership") {
    const HahnNumber zero;
    for (const char* qs : {"1/3", "1", "5/4"}) {
        const Rational q = Rational::parse(qs);
        const double qd = q.to_double();
        // Support at q' <= 1/q with coefficient 2/q: the seminorm sees it.
        const Rational qp = Rational(1) / q;
        CHECK_FALSE(in_u_ball(zero, q, HahnNumber::monomial(2.0 / qd, qp)));
        CHECK(in_u_ball(zero, q, zero));
        const HahnNumber above = HahnNumber::monomial(qd / 2.0, qp + Rational(1));
        CHECK(in_u_ball(zero, q, above));
    }
}

TEST_CASE("valuation ball membership is decided exactly") {
    const HahnNumber zero;
    const Rational n(1);
    const HahnNumber d = HahnNumber::d();
    const HahnNumber d2 = d * d;

    CHECK(in_valuation_ball(zero, n, d2));                   // lambda above n
    CHECK(in_valuation_ball(zero, n, zero));                 // center itself
    CHECK_FALSE(in_valuation_ball(zero, n, HahnNumber::real(0.25)));  // lambda below n

    // Ties at lambda = n hinge on the leading coefficient.
    CHECK(in_valuation_ball(zero, n, d.scaled(0.5)));
    CHECK_FALSE(in_valuation_ball(zero, n, d.scaled(2.0)));
    CHECK(in_valuation_ball(zero, n, d - d2));        // d - d^2 < d
    CHECK_FALSE(in_valuation_ball(zero, n, d + d2));  // d + d^2 > d
    CHECK_FALSE(in_valuation_ball(zero, n, d));       // equality is not inside
    CHECK(in_valuation_ball(zero, n, -d + d2));       // |−d + d²| = d − d²
    CHECK_FALSE(in_valuation_ball(zero, n, -d - d2));

    // |lead| = 1 with nothing stored after it and a finite cutoff: the order
    // against d^n is genuinely unknown.
    const HahnNumber tie = HahnNumber::make({{Rational(1), 1.0}}, ExtRational(Rational(2)));
    CHECK_THROWS_AS(in_valuation_ball(zero, n, tie), UndecidableError);
    const HahnNumber zcut = HahnNumber::make({}, ExtRational(Rational(1, 2)));
    CHECK_THROWS_AS(in_valuation_ball(zero, n, zcut), UndecidableError);
    CHECK(in_valuation_ball(zero, n, HahnNumber::make({}, ExtRational(Rational(3, 2)))));
}

TEST_CASE("metric values") {
    const Partition p = Partition::diagonal();
    const HahnNumber x = parse_number("1 + d^(1)");

    const MetricValue same_g = metric_gamma(p, x, x, 5);
    CHECK(same_g.value == 0.0);
    CHECK(same_g.error_bound == std::pow(2.0, -5));
    const MetricValue same_u = metric_u(x, x, 5);
    CHECK(same_u.value == 0.0);

    // x - y = 1: every prefix catches exponent 0, each summand is 2^-k / 2.
    const MetricValue unit = metric_gamma(p, x, x - HahnNumber::real(1.0), 3);
    CHECK(unit.value == 0.4375);
    CHECK(unit.error_bound == 0.125);

    // x - y = 3*d^-1: every u-bound k >= 1 sees it, summands 2^-k * 3/4.
    const MetricValue mu2 =
        metric_u(parse_number("3*d^(-1)"), HahnNumber(), 2);
    CHECK(mu2.value == 0.5625);
}

TEST_CASE("metric translation invariance is exact in the dyadic regime") {
    const Partition p = Partition::diagonal();
    ExactGen gen(777);
    for (int i = 0; i < 200; ++i) {
        const HahnNumber x = gen.number();
        const HahnNumber y = gen.number();
        const HahnNumber z = gen.number();
        CHECK(metric_gamma(p, x + z, y + z, 6).value == metric_gamma(p, x, y, 6).value);
        CHECK(metric_u(x + z, y + z, 6).value == metric_u(x, y, 6).value);
    }
}

TEST_CASE("metric bounds, symmetry and truncation error") {
    const Partition p = Partition::diagonal();
    MessyGen gen(778);
    for (int i = 0; i < 200; ++i) {
        const HahnNumber x = gen.number();
        const HahnNumber y = gen.number();
        const HahnNumber z = gen.number();
        for (int K : {3, 6}) {
            const MetricValue g = metric_gamma(p, x, y, K);
            CHECK(g.value <= 1.0 - std::pow(2.0, -K));
            CHECK(g.value == metric_gamma(p, y, x, K).value);
            // Doubling K moves the value by at most the certified bound.
            CHECK(std::abs(metric_gamma(p, x, y, 2 * K).value - g.value) <= g.error_bound);
            const double lhs = metric_gamma(p, x, z, K).value;
            const double rhs = g.value + metric_gamma(p, y, z, K).value;
            CHECK(lhs <= rhs + g.error_bound);

            const MetricValue u = metric_u(x, y, K);
            CHECK(u.value <= 1.0 - std::pow(2.0, -K));
            CHECK(u.value == metric_u(y, x, K).value);
            CHECK(std::abs(metric_u(x, y, 2 * K).value - u.value) <= u.error_bound);
        }
    }
}
