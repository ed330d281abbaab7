#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace hahn {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number in lowest terms with positive denominator.
///
/// Exponents of Hahn-field terms, cutoffs, and pseudo-ball radii for the
/// locally uniform family are all exact rationals; every comparison on them
/// must be decided exactly, which rules out floating point here.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(int n) : num_(n), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(BigInt n) : num_(std::move(n)), den_(1) {}

    /// Throws std::domain_error on zero denominator.
    Rational(BigInt num, BigInt den);

    /// Exact value of a finite IEEE double (doubles are dyadic rationals).
    /// Throws std::domain_error for NaN or infinity.
    static Rational from_double(double x);

    /// Parses "p" or "p/q" with optional leading '-'. Throws SyntaxError.
    static Rational parse(std::string_view text);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const noexcept { return num_ == 0 ? 0 : (num_ < 0 ? -1 : 1); }

    /// Largest integer <= *this.
    BigInt floor() const;

    double to_double() const;

    /// "p" when the denominator is 1, otherwise "p/q".
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const BigInt lhs = a.num_ * b.den_;
        const BigInt rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    void normalize();

    BigInt num_;
    BigInt den_;
};

Rational abs(const Rational& r);
std::ostream& operator<<(std::ostream& os, const Rational& r);

/// A rational extended with +infinity. Models both lambda values (lambda of a
/// stored-zero element is +infinity) and cutoffs (+infinity iff exact).
class ExtRational {
public:
    ExtRational() : finite_(true), value_() {}
    ExtRational(Rational v) : finite_(true), value_(std::move(v)) {}
    ExtRational(int v) : finite_(true), value_(v) {}

    static ExtRational infinity() {
        ExtRational e;
        e.finite_ = false;
        return e;
    }

    bool is_finite() const noexcept { return finite_; }
    bool is_infinite() const noexcept { return !finite_; }

    /// Throws std::domain_error when infinite.
    const Rational& value() const;

    /// "p", "p/q", or "inf".
    std::string str() const;

    /// +infinity absorbs addition.
    friend ExtRational operator+(const ExtRational& a, const ExtRational& b);
    friend ExtRational operator-(const ExtRational& a, const Rational& b);

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend std::partial_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
        if (!a.finite_ && !b.finite_) return std::partial_ordering::equivalent;
        if (!a.finite_) return std::partial_ordering::greater;
        if (!b.finite_) return std::partial_ordering::less;
        return a.value_ <=> b.value_;
    }

private:
    bool finite_;
    Rational value_;
};

ExtRational min(const ExtRational& a, const ExtRational& b);
std::ostream& operator<<(std::ostream& os, const ExtRational& r);

}  // namespace hahn
