#pragma once

#include "hahn/rational.hpp"

#include <vector>

namespace hahn {

/// One term of a generalized power series: coef * d^exp.
struct Term {
    Rational exp;
    double coef = 0.0;
};

enum class Ordering { LT, EQ, GT };

/// Truncated element of the Hahn field over the rationals.
///
/// Stored as a finite, strictly increasing term list plus a cutoff: the
/// element's coefficients are known exactly at every exponent q < cutoff (an
/// absent term means coefficient 0 there) and unknown from the cutoff on.
/// Cutoff +infinity means the element is exact. Invariants: terms sorted by
/// exponent, no duplicates, no zero or non-finite coefficients, every stored
/// exponent below the cutoff.
class HahnNumber {
public:
    /// Exact zero.
    HahnNumber() : cutoff_(ExtRational::infinity()) {}

    /// Normalizes (sorts, drops zeros and terms at or beyond the cutoff).
    /// Throws DuplicateExponentError on repeated exponents and
    /// std::domain_error on non-finite coefficients.
    static HahnNumber make(std::vector<Term> terms,
                           ExtRational cutoff = ExtRational::infinity());

    static HahnNumber monomial(double coef, Rational exp);

    /// Embedding of the reals: coef * d^0.
    static HahnNumber real(double coef);

    /// The canonical positive infinitesimal.
    static HahnNumber d() { return monomial(1.0, Rational(1)); }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    const ExtRational& cutoff() const noexcept { return cutoff_; }

    /// No stored terms (zero at every known exponent).
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_exact() const noexcept { return cutoff_.is_infinite(); }

    /// Coefficient at exponent q. Throws CutoffError when q >= cutoff, since
    /// the coefficient there is not determined by the representation.
    double at(const Rational& q) const;

    /// Smallest exponent with nonzero coefficient; +infinity for a stored
    /// zero (the element is zero up to its cutoff).
    ExtRational lambda() const;

    /// Copy truncated to min(cutoff, new_cutoff).
    HahnNumber truncated(const ExtRational& new_cutoff) const;

    /// Multiplication by a real scalar. Exact zero for a == 0.
    HahnNumber scaled(double a) const;

    /// Multiplication by d^s: shifts every exponent and the cutoff by s.
    HahnNumber shifted(const Rational& s) const;

    HahnNumber operator-() const;

    friend HahnNumber operator+(const HahnNumber& x, const HahnNumber& y);
    friend HahnNumber operator-(const HahnNumber& x, const HahnNumber& y);
    friend HahnNumber operator*(const HahnNumber& x, const HahnNumber& y);

    /// Structural equality: identical term lists and identical cutoff. Two
    /// representations that merely agree below their common cutoff differ.
    friend bool operator==(const HahnNumber& x, const HahnNumber& y);
    friend bool operator!=(const HahnNumber& x, const HahnNumber& y) { return !(x == y); }

private:
    std::vector<Term> terms_;
    ExtRational cutoff_;
};

/// lambda(x): min of the support, +infinity for a stored zero.
ExtRational lambda(const HahnNumber& x);

/// Ultrametric absolute value exp(-lambda(x)); 0 for a stored zero.
double valuation(const HahnNumber& x);

/// Order comparison via the sign of the leading coefficient of x - y.
/// Throws UndecidableError when x - y has no stored terms but finite cutoff:
/// the sign is not determined at the current truncation. EQ requires the
/// difference to be exactly zero (infinite cutoff).
Ordering compare(const HahnNumber& x, const HahnNumber& y);

/// |x| in the field order: x if x >= 0 else -x. Throws UndecidableError when
/// the sign of x is undecidable at the current truncation.
HahnNumber field_abs(const HahnNumber& x);

}  // namespace hahn
