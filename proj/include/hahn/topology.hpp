#pragma once

#include "hahn/hahn_number.hpp"
#include "hahn/partition.hpp"
#include "hahn/seminorm.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace hahn {

/// One ball of one of the three families, concrete enough to re-check
/// membership: valuation balls |y - center| < d^n, weak pseudo-balls with a
/// float radius and a partition, locally uniform pseudo-balls with an exact
/// rational radius.
struct BallRef {
    enum class Family { Valuation, Gamma, LocallyUniform };

    Family family = Family::Valuation;
    HahnNumber center;
    Rational rational_param;       // Valuation: exponent n; LocallyUniform: radius q
    double gamma_radius = 0.0;     // Gamma only
    std::optional<Partition> partition;  // Gamma only

    bool contains(const HahnNumber& y) const;
    std::string describe() const;
};

/// A separation witness: a point claimed inside one ball and outside another,
/// with both memberships verified at construction via the ball predicates.
struct Witness {
    std::string claim;
    HahnNumber point;
    BallRef inside;
    BallRef outside;
    bool inside_ok = false;
    bool outside_ok = false;

    bool verified() const noexcept { return inside_ok && outside_ok; }
};

nlohmann::ordered_json witness_to_json(const Witness& w);

/// Point (r/2)*d^(max of block 1) lies in the weak pseudo-ball of radius r at
/// 0 but outside the valuation ball B(0, d^n). Pre: n > max of block 1.
Witness witness_weak_not_valuation(const Partition& p, const Rational& n, double r);

/// Point (2/q)*d^(q') with q' in (0, q] outside the prefix of p up to mu(r):
/// inside the weak pseudo-ball of radius r at 0, outside the locally uniform
/// pseudo-ball of radius 1/q. q' exists for every finite partition because
/// intervals of rationals are not well-bounded; found by scanning 1/m in
/// diagonal order.
Witness witness_u_not_weak(const Partition& p, const Rational& q, double r);

/// Restriction witness: 2*d^s with s <= 1 outside the prefix of p up to
/// mu(q), inside the weak pseudo-ball of radius q at 0 but outside the
/// locally uniform pseudo-ball of radius 1. The point has finite support, so
/// the separation persists on the subfield of finitely supported elements.
Witness witness_restriction(const Partition& p, double q);

struct CheckReport {
    std::string claim;
    long long samples = 0;
    long long violations = 0;
    std::uint64_t seed = 0;
    std::string details;
};

nlohmann::ordered_json check_report_to_json(const CheckReport& rep);

/// Samples y in the weak pseudo-ball of radius delta = min(1/N, eps) around x
/// for partition p, with N = max over the prefix of o up to mu(eps) of
/// locate_p, and verifies each sample lands in the eps-pseudo-ball for o.
CheckReport check_finite_partition_equivalence(const Partition& p, const Partition& o,
                                               const HahnNumber& x, double eps,
                                               long long samples, std::uint64_t seed);

/// Samples y in the locally uniform pseudo-ball of radius 1/q1 around x,
/// q1 = max(max prefix up to mu(r), 1/r) + 1, and verifies each sample lands
/// in the weak pseudo-ball of radius r.
CheckReport check_weak_subset_u(const Partition& p, const HahnNumber& x, double r,
                                long long samples, std::uint64_t seed);

/// Random point of the weak pseudo-ball: supports drawn from the prefix up to
/// mu(r) plus fresh exponents above its max (where coefficients are
/// unconstrained), prefix coefficients uniform within a strictness margin.
HahnNumber sample_in_gamma_ball(const Partition& p, const HahnNumber& center, double r,
                                std::mt19937_64& rng);

/// Random point of the locally uniform pseudo-ball of radius q: supports at
/// rationals <= 1/q with coefficients inside the radius, plus unconstrained
/// fresh exponents above 1/q.
HahnNumber sample_in_u_ball(const HahnNumber& center, const Rational& q, std::mt19937_64& rng);

}  // namespace hahn
