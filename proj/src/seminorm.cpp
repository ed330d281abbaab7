#include "hahn/seminorm.hpp"

#include "hahn/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hahn {

double gamma_seminorm(const Partition& p, long long n, const HahnNumber& x) {
    if (n < 1) throw std::domain_error("seminorm index must be >= 1");
    const Rational top = p.prefix_max(n);
    if (ExtRational(top) >= x.cutoff()) {
        throw CutoffError("seminorm at index " + std::to_string(n) +
                          " needs the coefficient at exponent " + top.str() +
                          ", which is at or beyond the cutoff " + x.cutoff().str());
    }
    // q lies in the union of blocks 1..n exactly when locate(q) <= n, so the
    // max runs over stored terms without enumerating the prefix.
    double m = 0.0;
    for (const auto& t : x.terms()) {
        if (t.exp > top) break;
        if (p.locate(t.exp) <= n) m = std::max(m, std::abs(t.coef));
    }
    return m;
}

double u_seminorm(const Rational& r, const HahnNumber& x) {
    if (ExtRational(r) >= x.cutoff()) {
        throw CutoffError("seminorm bound " + r.str() + " is at or beyond the cutoff " +
                          x.cutoff().str());
    }
    double m = 0.0;
    for (const auto& t : x.terms()) {
        if (t.exp > r) break;
        m = std::max(m, std::abs(t.coef));
    }
    return m;
}

long long mu(double r) {
    if (!std::isfinite(r) || r <= 0.0) {
        throw std::domain_error("radius must be a positive finite number");
    }
    const Rational exact = Rational::from_double(r);
    // Smallest n with 1/n < r, i.e. n > 1/r: floor(den/num) + 1 on the exact
    // dyadic value of r.
    const BigInt n = exact.den() / exact.num() + 1;
    if (n > BigInt(std::numeric_limits<long long>::max())) {
        throw std::domain_error("radius too small: seminorm index overflows");
    }
    return n.convert_to<long long>();
}

bool in_gamma_ball(const Partition& p, const HahnNumber& center, double r, const HahnNumber& y) {
    return gamma_seminorm(p, mu(r), y - center) < r;
}

bool in_u_ball(const HahnNumber& center, const Rational& q, const HahnNumber& y) {
    if (q.sign() <= 0) throw std::domain_error("radius parameter must be positive");
    return u_seminorm(Rational(1) / q, y - center) < q.to_double();
}

bool in_valuation_ball(const HahnNumber& center, const Rational& n, const HahnNumber& y) {
    const HahnNumber z = y - center;
    if (z.is_zero()) {
        // True lambda of z is at least the cutoff.
        if (z.is_exact() || ExtRational(n) < z.cutoff()) return true;
        throw UndecidableError("valuation ball membership undecidable: difference vanishes "
                               "below cutoff " +
                               z.cutoff().str());
    }
    const auto& terms = z.terms();
    const Rational& lam = terms.front().exp;
    if (lam > n) return true;
    if (lam < n) return false;
    // lambda(z) == n: |z| < d^n iff the leading coefficients tie at magnitude
    // 1 and the next coefficient of |z| is negative.
    const double lead = std::abs(terms.front().coef);
    if (lead != 1.0) return lead < 1.0;
    const double sign = terms.front().coef > 0.0 ? 1.0 : -1.0;
    if (terms.size() >= 2) return sign * terms[1].coef < 0.0;
    if (z.is_exact()) return false;  // |z| == d^n exactly
    throw UndecidableError("valuation ball membership undecidable at cutoff " +
                           z.cutoff().str());
}

namespace {

MetricValue metric_from(const std::vector<double>& s) {
    MetricValue mv;
    double scale = 1.0;
    for (double sk : s) {
        scale *= 0.5;
        mv.value += scale * (sk / (1.0 + sk));
    }
    mv.error_bound = scale;
    return mv;
}

}  // namespace

MetricValue metric_gamma(const Partition& p, const HahnNumber& x, const HahnNumber& y, int K) {
    if (K < 1) throw std::domain_error("metric truncation depth must be >= 1");
    const HahnNumber z = x - y;
    std::vector<double> s;
    s.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) s.push_back(gamma_seminorm(p, k, z));
    return metric_from(s);
}

MetricValue metric_u(const HahnNumber& x, const HahnNumber& y, int K) {
    if (K < 1) throw std::domain_error("metric truncation depth must be >= 1");
    const HahnNumber z = x - y;
    std::vector<double> s;
    s.reserve(static_cast<std::size_t>(K));
    for (int k = 1; k <= K; ++k) s.push_back(u_seminorm(Rational(k), z));
    return metric_from(s);
}

}  // namespace hahn
