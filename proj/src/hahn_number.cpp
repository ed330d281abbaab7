#include "hahn/hahn_number.hpp"

#include "hahn/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace hahn {

namespace {

void check_finite(double coef) {
    if (!std::isfinite(coef)) throw std::domain_error("non-finite coefficient");
}

}  // namespace

HahnNumber HahnNumber::make(std::vector<Term> terms, ExtRational cutoff) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.exp < b.exp; });
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (terms[i - 1].exp == terms[i].exp) {
            throw DuplicateExponentError("duplicate exponent " + terms[i].exp.str() +
                                         " in term list");
        }
    }
    HahnNumber x;
    x.cutoff_ = std::move(cutoff);
    x.terms_.reserve(terms.size());
    for (auto& t : terms) {
        check_finite(t.coef);
        if (t.coef == 0.0) continue;
        if (ExtRational(t.exp) >= x.cutoff_) continue;
        x.terms_.push_back(std::move(t));
    }
    return x;
}

HahnNumber HahnNumber::monomial(double coef, Rational exp) {
    return make({Term{std::move(exp), coef}});
}

HahnNumber HahnNumber::real(double coef) { return monomial(coef, Rational(0)); }

double HahnNumber::at(const Rational& q) const {
    if (ExtRational(q) >= cutoff_) {
        throw CutoffError("coefficient at exponent " + q.str() +
                          " is beyond the cutoff " + cutoff_.str());
    }
    auto it = std::lower_bound(terms_.begin(), terms_.end(), q,
                               [](const Term& t, const Rational& v) { return t.exp < v; });
    if (it != terms_.end() && it->exp == q) return it->coef;
    return 0.0;
}

ExtRational HahnNumber::lambda() const {
    if (terms_.empty()) return ExtRational::infinity();
    return ExtRational(terms_.front().exp);
}

HahnNumber HahnNumber::truncated(const ExtRational& new_cutoff) const {
    HahnNumber x;
    x.cutoff_ = min(cutoff_, new_cutoff);
    for (const auto& t : terms_) {
        if (ExtRational(t.exp) >= x.cutoff_) break;
        x.terms_.push_back(t);
    }
    return x;
}

HahnNumber HahnNumber::scaled(double a) const {
    check_finite(a);
    if (a == 0.0) return HahnNumber();
    HahnNumber x;
    x.cutoff_ = cutoff_;
    x.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        const double c = a * t.coef;
        check_finite(c);
        if (c != 0.0) x.terms_.push_back(Term{t.exp, c});
    }
    return x;
}

HahnNumber HahnNumber::shifted(const Rational& s) const {
    HahnNumber x;
    x.cutoff_ = cutoff_ + ExtRational(s);
    x.terms_.reserve(terms_.size());
    for (const auto& t : terms_) x.terms_.push_back(Term{t.exp + s, t.coef});
    return x;
}

HahnNumber HahnNumber::operator-() const {
    HahnNumber x;
    x.cutoff_ = cutoff_;
    x.terms_.reserve(terms_.size());
    for (const auto& t : terms_) x.terms_.push_back(Term{t.exp, -t.coef});
    return x;
}

HahnNumber operator+(const HahnNumber& x, const HahnNumber& y) {
    HahnNumber z;
    z.cutoff_ = min(x.cutoff_, y.cutoff_);
    z.terms_.reserve(x.terms_.size() + y.terms_.size());
    auto ix = x.terms_.begin();
    auto iy = y.terms_.begin();
    const auto push = [&z](const Rational& exp, double coef) {
        if (coef == 0.0) return;
        check_finite(coef);
        if (ExtRational(exp) < z.cutoff_) z.terms_.push_back(Term{exp, coef});
    };
    while (ix != x.terms_.end() && iy != y.terms_.end()) {
        if (ix->exp < iy->exp) {
            push(ix->exp, ix->coef);
            ++ix;
        } else if (iy->exp < ix->exp) {
            push(iy->exp, iy->coef);
            ++iy;
        } else {
            push(ix->exp, ix->coef + iy->coef);
            ++ix;
            ++iy;
        }
    }
    for (; ix != x.terms_.end(); ++ix) push(ix->exp, ix->coef);
    for (; iy != y.terms_.end(); ++iy) push(iy->exp, iy->coef);
    return z;
}

HahnNumber operator-(const HahnNumber& x, const HahnNumber& y) { return x + (-y); }

bool operator==(const HahnNumber& x, const HahnNumber& y) {
    if (x.cutoff_ != y.cutoff_ || x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i) {
        if (x.terms_[i].exp != y.terms_[i].exp || x.terms_[i].coef != y.terms_[i].coef) {
            return false;
        }
    }
    return true;
}

HahnNumber operator*(const HahnNumber& x, const HahnNumber& y) {
    // A stored zero contributes its cutoff as the lambda lower bound: the true
    // lambda of a truncation-zero operand is at least its cutoff.
    const ExtRational lx = x.terms_.empty() ? x.cutoff_ : ExtRational(x.terms_.front().exp);
    const ExtRational ly = y.terms_.empty() ? y.cutoff_ : ExtRational(y.terms_.front().exp);
    HahnNumber z;
    z.cutoff_ = min(lx + y.cutoff_, ly + x.cutoff_);
    std::map<Rational, double> acc;
    for (const auto& tx : x.terms_) {
        for (const auto& ty : y.terms_) {
            Rational e = tx.exp + ty.exp;
            if (ExtRational(e) >= z.cutoff_) continue;
            acc[std::move(e)] += tx.coef * ty.coef;
        }
    }
    z.terms_.reserve(acc.size());
    for (auto& [exp, coef] : acc) {
        if (coef == 0.0) continue;
        check_finite(coef);
        z.terms_.push_back(Term{exp, coef});
    }
    return z;
}

ExtRational lambda(const HahnNumber& x) { return x.lambda(); }

double valuation(const HahnNumber& x) {
    if (x.is_zero()) return 0.0;
    return std::exp(-x.lambda().value().to_double());
}

Ordering compare(const HahnNumber& x, const HahnNumber& y) {
    const HahnNumber z = x - y;
    if (z.is_zero()) {
        if (z.is_exact()) return Ordering::EQ;
        throw UndecidableError("comparison undecidable at current truncation: difference "
                               "vanishes below cutoff " +
                               z.cutoff().str());
    }
    return z.terms().front().coef > 0.0 ? Ordering::GT : Ordering::LT;
}

HahnNumber field_abs(const HahnNumber& x) {
    switch (compare(x, HahnNumber())) {
        case Ordering::LT: return -x;
        default: return x;
    }
}

}  // namespace hahn
