#include "hahn/oracle.hpp"

#include "hahn/errors.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace hahn::oracle {

namespace {

ExtRational lambda_lower(const HahnNumber& x) {
    return x.is_zero() ? x.cutoff() : x.lambda();
}

}  // namespace

HahnNumber mul_naive(const HahnNumber& x, const HahnNumber& y) {
    const ExtRational cutoff =
        min(lambda_lower(x) + y.cutoff(), lambda_lower(y) + x.cutoff());

    std::vector<std::pair<Rational, double>> products;
    for (const auto& tx : x.terms()) {
        for (const auto& ty : y.terms()) {
            Rational e = tx.exp + ty.exp;
            if (ExtRational(e) < cutoff) {
                products.emplace_back(std::move(e), tx.coef * ty.coef);
            }
        }
    }
    std::sort(products.begin(), products.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Term> terms;
    std::size_t i = 0;
    while (i < products.size()) {
        Rational e = products[i].first;
        double sum = 0.0;
        while (i < products.size() && products[i].first == e) {
            sum += products[i].second;
            ++i;
        }
        if (sum != 0.0) terms.push_back(Term{std::move(e), sum});
    }
    return HahnNumber::make(std::move(terms), cutoff);
}

HahnNumber partial_sums(const PowerSeries& ps, const HahnNumber& x, long long m,
                        const Rational& cutoff, const OracleConfig& config) {
    if (config.max_terms <= 0 || !(config.cauchy_tol > 0.0) || config.m_max <= 0) {
        throw std::invalid_argument("oracle config fields must be positive");
    }
    if (m < 0) throw std::invalid_argument("partial-sum depth must be >= 0");
    if (m > config.m_max) {
        throw BudgetError("partial-sum depth " + std::to_string(m) + " exceeds m_max");
    }

    const HahnNumber diff = x - ps.center();

    // Power carry bound: term n touches exponents >= lambda(a_n) + lambda(pow),
    // and lambda(a_n) >= a_floor + b_min*n, so keeping pow exact below
    // cutoff - a_floor - b_min*n + 1 keeps every contribution below `cutoff`
    // exact. Valid when lambda(diff) >= -b_min; otherwise powers are left
    // untruncated and the term budget is the only stop.
    Rational b_min(0);
    for (const auto& s : ps.shapes()) b_min = std::min(b_min, s.beta);
    Rational a_floor(0);
    bool have_floor = false;
    for (const auto& s : ps.shapes()) {
        a_floor = have_floor ? std::min(a_floor, s.alpha) : s.alpha;
        have_floor = true;
    }
    for (std::size_t i = 0; i < ps.head().size(); ++i) {
        const ExtRational lam = lambda_lower(ps.head()[i]);
        if (lam.is_infinite()) continue;
        const Rational adj = lam.value() - b_min * Rational(static_cast<long long>(i));
        a_floor = have_floor ? std::min(a_floor, adj) : adj;
        have_floor = true;
    }
    const bool can_carry = !(lambda_lower(diff) < ExtRational(-b_min));

    HahnNumber acc;
    HahnNumber pow = HahnNumber::real(1.0);
    for (long long n = 0; n <= m; ++n) {
        acc = acc + ps.coefficient(n) * pow;
        if (static_cast<long long>(acc.terms().size()) > config.max_terms) {
            throw BudgetError("partial sum outgrew the term budget at n = " + std::to_string(n));
        }
        if (n < m) {
            pow = pow * diff;
            if (can_carry) {
                const Rational carry = cutoff - a_floor - b_min * Rational(n + 1) + Rational(1);
                pow = pow.truncated(ExtRational(carry));
            }
            if (static_cast<long long>(pow.terms().size()) > config.max_terms) {
                throw BudgetError("power outgrew the term budget at n = " + std::to_string(n));
            }
        }
    }
    return acc.truncated(ExtRational(cutoff));
}

std::vector<std::pair<Rational, long long>> enumerate_reduced_fractions(long long bound) {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    std::vector<std::pair<Rational, long long>> out;
    for (long long den = 1; den <= bound; ++den) {
        for (long long num = -(bound - den); num <= bound - den; ++num) {
            if (boost::multiprecision::gcd(BigInt(num < 0 ? -num : num), BigInt(den)) != 1) {
                continue;
            }
            out.emplace_back(Rational(num, den), (num < 0 ? -num : num) + den);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });
    return out;
}

}  // namespace hahn::oracle
