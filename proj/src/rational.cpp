#include "hahn/rational.hpp"

#include "hahn/errors.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace hahn {

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    normalize();
}

void Rational::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    BigInt g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("cannot convert non-finite double to rational");
    if (x == 0.0) return Rational();
    int exp = 0;
    // m in [0.5, 1); m * 2^53 is an exact integer for any finite double.
    const double m = std::frexp(x, &exp);
    const auto mantissa = static_cast<long long>(std::ldexp(m, 53));
    BigInt num(mantissa);
    BigInt den(1);
    const int shift = exp - 53;
    if (shift >= 0) {
        num <<= shift;
    } else {
        den <<= -shift;
    }
    return Rational(std::move(num), std::move(den));
}

Rational Rational::parse(std::string_view text) {
    std::size_t pos = 0;
    const auto fail = [&](const char* what) -> void { throw SyntaxError(what, pos); };

    const auto parse_int = [&](bool allow_sign) -> BigInt {
        std::size_t start = pos;
        if (allow_sign && pos < text.size() && text[pos] == '-') ++pos;
        std::size_t digits_begin = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == digits_begin) fail("expected integer");
        return BigInt(std::string(text.substr(start, pos - start)));
    };

    BigInt num = parse_int(true);
    BigInt den(1);
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = parse_int(false);
        if (den == 0) fail("zero denominator");
    }
    if (pos != text.size()) fail("trailing characters in rational");
    return Rational(std::move(num), std::move(den));
}

BigInt Rational::floor() const {
    BigInt q = num_ / den_;
    if (num_ < 0 && q * den_ != num_) --q;
    return q;
}

double Rational::to_double() const {
    boost::multiprecision::cpp_rational exact(num_, den_);
    return exact.convert_to<double>();
}

std::string Rational::str() const {
    std::string s = num_.str();
    if (den_ != 1) {
        s += '/';
        s += den_.str();
    }
    return s;
}

Rational Rational::operator-() const {
    Rational r(*this);
    r.num_ = -r.num_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

const Rational& ExtRational::value() const {
    if (!finite_) throw std::domain_error("value() on infinite ExtRational");
    return value_;
}

std::string ExtRational::str() const { return finite_ ? value_.str() : "inf"; }

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
    if (a.is_infinite() || b.is_infinite()) return ExtRational::infinity();
    return ExtRational(a.value() + b.value());
}

ExtRational operator-(const ExtRational& a, const Rational& b) {
    if (a.is_infinite()) return ExtRational::infinity();
    return ExtRational(a.value() - b);
}

ExtRational min(const ExtRational& a, const ExtRational& b) { return a <= b ? a : b; }

std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

}  // namespace hahn
