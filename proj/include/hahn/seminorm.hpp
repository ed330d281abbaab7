#pragma once

#include "hahn/hahn_number.hpp"
#include "hahn/partition.hpp"

namespace hahn {

/// Partition-indexed seminorm: max of |x[q]| over q in the union of blocks
/// 1..n. Pre: max of that union lies below cutoff(x); otherwise CutoffError
/// naming the offending exponent.
double gamma_seminorm(const Partition& p, long long n, const HahnNumber& x);

/// Locally uniform seminorm: max of |x[q]| over stored exponents q <= r
/// (finite because the representation is finite). Pre: r < cutoff(x).
double u_seminorm(const Rational& r, const HahnNumber& x);

/// Smallest n >= 1 with 1/n < r, decided exactly from the dyadic value of the
/// double r. Throws std::domain_error for r <= 0 or non-finite r.
long long mu(double r);

/// Weak pseudo-ball membership: gamma_seminorm(p, mu(r), y - center) < r.
bool in_gamma_ball(const Partition& p, const HahnNumber& center, double r, const HahnNumber& y);

/// Locally uniform pseudo-ball membership with exact rational radius q > 0:
/// u_seminorm(1/q, y - center) < q.
bool in_u_ball(const HahnNumber& center, const Rational& q, const HahnNumber& y);

/// Valuation ball membership: |y - center| < d^n in the field order, decided
/// exactly; throws UndecidableError when the truncation cannot decide it.
bool in_valuation_ball(const HahnNumber& center, const Rational& n, const HahnNumber& y);

struct MetricValue {
    double value = 0.0;
    double error_bound = 0.0;  // tail of the truncated series: 2^-K
};

/// Truncated metric sum_{k=1..K} 2^-k s_k / (1 + s_k) with s_k the
/// partition-indexed seminorms of x - y. Pre as gamma_seminorm at n = K.
MetricValue metric_gamma(const Partition& p, const HahnNumber& x, const HahnNumber& y, int K);

/// Same shape with s_k = u_seminorm(k, x - y). Pre: K < cutoff(x - y).
MetricValue metric_u(const HahnNumber& x, const HahnNumber& y, int K);

}  // namespace hahn
