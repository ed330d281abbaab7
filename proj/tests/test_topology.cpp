#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hahn/errors.hpp"
#include "hahn/text.hpp"
#include "hahn/topology.hpp"
#include "test_util.hpp"

#include <random>

using namespace hahn;
using namespace hahn::testutil;

namespace {

Partition swapped_diagonal() {
    return Partition::custom_finite({diagonal_block(2), diagonal_block(1)},
                                    0);
}

}  // namespace

TEST_CASE("weak-not-valuation witness") {
    const Partition p = Partition::diagonal();

    const Witness a = witness_weak_not_valuation(p, Rational(1), 0.5);
    CHECK(print_number(a.point) == "0.25");
    CHECK(a.verified());
    CHECK(in_gamma_ball(p, HahnNumber(), 0.5, a.point));
    CHECK_FALSE(in_valuation_ball(HahnNumber(), Rational(1), a.point));

    const Witness b = witness_weak_not_valuation(p, Rational(2), 1.0);
    CHECK(print_number(b.point) == "0.5");
    CHECK(b.verified());

    // The point scales linearly with the radius.
    const Witness tiny = witness_weak_not_valuation(p, Rational(1), 0.5e-3);
    CHECK(tiny.point.terms().front().coef == 0.25e-3);
    CHECK(tiny.verified());

    CHECK_THROWS_AS(witness_weak_not_valuation(p, Rational(0), 0.5), std::domain_error);
    CHECK_THROWS_AS(witness_weak_not_valuation(p, Rational(1), 0.0), std::domain_error);
    // Block 1 of the swapped partition tops out at 1, so n = 1 is too small.
    CHECK_THROWS_AS(witness_weak_not_valuation(swapped_diagonal(), Rational(1), 0.5),
                    std::domain_error);
}

TEST_CASE("u-not-weak witness") {
    const Partition p = Partition::diagonal();

    const Witness a = witness_u_not_weak(p, Rational(1), 0.5);
    CHECK(print_number(a.point) == "2*d^(1/3)");
    CHECK(a.verified());
    CHECK(in_gamma_ball(p, HahnNumber(), 0.5, a.point));
    CHECK_FALSE(in_u_ball(HahnNumber(), Rational(1), a.point));

    const Witness b = witness_u_not_weak(p, Rational(2), 1.0);
    CHECK(print_number(b.point) == "d^(1/2)");
    CHECK(b.verified());

    // mu(r) = 1 is degenerate: even exponent 1 escapes the prefix.
    const Witness c = witness_u_not_weak(p, Rational(1), 2.0);
    CHECK(print_number(c.point) == "2*d^(1)");
    CHECK(c.verified());

    const Witness d = witness_u_not_weak(p, Rational(1, 2), 0.5);
    CHECK(print_number(d.point) == "4*d^(1/3)");
    CHECK(d.verified());

    CHECK_THROWS_AS(witness_u_not_weak(p, Rational(-1), 0.5), std::domain_error);
}

TEST_CASE("restriction witness survives on finite supports") {
    const Partition p = Partition::diagonal();
    for (const char* qs : {"1/2", "1/3", "1/5"}) {
        const double q = Rational::parse(qs).to_double();
        const Witness w = witness_restriction(p, q);
        CHECK(w.verified());
        REQUIRE(w.point.terms().size() == 1);  // finite support by construction
        CHECK(w.point.terms().front().coef == 2.0);
        CHECK(w.point.terms().front().exp <= Rational(1));
        CHECK(gamma_seminorm(p, mu(q), w.point) < q);
        CHECK(u_seminorm(Rational(1), w.point) >= 1.0);
    }
    CHECK_THROWS_AS(witness_restriction(p, -0.5), std::domain_error);
}

TEST_CASE("witnesses self-verify across random parameterizations") {
    const Partition diag = Partition::diagonal();
    const Partition swapped = swapped_diagonal();
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> radius(0.05, 3.0);
    std::uniform_int_distribution<int> small(1, 6);
    for (int i = 0; i < 100; ++i) {
        const Partition& p = (i % 2 == 0) ? diag : swapped;
        const double r = radius(rng);
        const Rational n(small(rng) + 1);  // above max of block 1 for both partitions
        const Rational q(small(rng), small(rng));

        const Witness wv = witness_weak_not_valuation(p, n, r);
        CHECK(wv.verified());
        CHECK(wv.inside.contains(wv.point));
        CHECK_FALSE(wv.outside.contains(wv.point));

        const Witness uw = witness_u_not_weak(p, q, r);
        CHECK(uw.verified());
        CHECK(uw.inside.contains(uw.point));
        CHECK_FALSE(uw.outside.contains(uw.point));

        const Witness re = witness_restriction(p, r);
        CHECK(re.verified());
        CHECK(re.point.terms().size() == 1);
    }
}

TEST_CASE("witness json shape") {
    const Witness w = witness_u_not_weak(Partition::diagonal(), Rational(1), 0.5);
    const auto j = witness_to_json(w);
    CHECK(j.at("schema") == "hahn/1");
    CHECK(j.at("claim") == "u-not-weak");
    CHECK(j.at("point") == "2*d^(1/3)");
    CHECK(j.at("verified") == true);
    CHECK(j.at("inside_ok") == true);
    CHECK(j.at("outside_ok") == true);
    CHECK(j.at("inside").get<std::string>().find("weak") != std::string::npos);
}

TEST_CASE("ball samplers land inside their balls") {
    const Partition p = Partition::diagonal();
    std::mt19937_64 rng(911);
    MessyGen gen(912);
    for (int i = 0; i < 200; ++i) {
        const HahnNumber c = gen.number(4);
        const double r = std::uniform_real_distribution<double>(0.05, 2.0)(rng);
        CHECK(in_gamma_ball(p, c, r, sample_in_gamma_ball(p, c, r, rng)));
        const Rational q(std::uniform_int_distribution<int>(1, 4)(rng),
                         std::uniform_int_distribution<int>(1, 3)(rng));
        CHECK(in_u_ball(c, q, sample_in_u_ball(c, q, rng)));
    }
}

TEST_CASE("nested weak pseudo-balls") {
    // A ball of radius min(r1, r2 - r1) around any point of the r1-ball stays
    // inside the r2-ball around the original center.
    const Partition p = Partition::diagonal();
    std::mt19937_64 rng(913);
    MessyGen gen(914);
    std::uniform_real_distribution<double> small(0.05, 1.0);
    long long violations = 0;
    for (int i = 0; i < 500; ++i) {
        const HahnNumber c = gen.number(4);
        const double r1 = small(rng);
        const double r2 = r1 + small(rng);
        const HahnNumber y = sample_in_gamma_ball(p, c, r1, rng);
        const double r = std::min(r1, r2 - r1);
        const HahnNumber z = sample_in_gamma_ball(p, y, r, rng);
        if (!in_gamma_ball(p, c, r2, z)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("finite partitions induce the same weak topology") {
    const Partition diag = Partition::diagonal();
    const Partition swapped = swapped_diagonal();

    const CheckReport trivial =
        check_finite_partition_equivalence(diag, diag, HahnNumber(), 0.25, 200, 1);
    CHECK(trivial.samples == 200);
    CHECK(trivial.violations == 0);

    const CheckReport rep =
        check_finite_partition_equivalence(diag, swapped, HahnNumber(), 0.25, 200, 20240801);
    CHECK(rep.violations == 0);
    CHECK(rep.details.find("N = 5") != std::string::npos);
    CHECK(rep.details.find("delta = 0.2") != std::string::npos);

    const CheckReport unit =
        check_finite_partition_equivalence(swapped, diag, parse_number("1 + d^(1)"), 1.0, 200, 7);
    CHECK(unit.violations == 0);

    const auto j = check_report_to_json(rep);
    CHECK(j.at("schema") == "hahn/1");
    CHECK(j.at("violations") == 0);
    CHECK(j.at("seed") == 20240801);

    CHECK_THROWS_AS(check_finite_partition_equivalence(diag, swapped, HahnNumber(), 0.0, 10, 1),
                    std::domain_error);
}

TEST_CASE("small locally uniform balls sit inside weak pseudo-balls") {
    const Partition p = Partition::diagonal();

    const CheckReport rep = check_weak_subset_u(p, HahnNumber(), 0.5, 200, 20240801);
    CHECK(rep.samples == 200);
    CHECK(rep.violations == 0);
    CHECK(rep.details.find("q0 = 2") != std::string::npos);
    CHECK(rep.details.find("q1 = 3") != std::string::npos);
    CHECK(rep.details.find("u-radius = 1/3") != std::string::npos);

    MessyGen gen(915);
    for (double r : {0.1, 0.5, 1.0, 2.5}) {
        const CheckReport rr = check_weak_subset_u(p, gen.number(4), r, 100, 5);
        CHECK(rr.violations == 0);
    }
    const CheckReport sw = check_weak_subset_u(swapped_diagonal(), HahnNumber(), 0.75, 100, 6);
    CHECK(sw.violations == 0);

    CHECK_THROWS_AS(check_weak_subset_u(p, HahnNumber(), -1.0, 10, 1), std::domain_error);
}
