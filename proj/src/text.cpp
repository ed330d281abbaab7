#include "hahn/text.hpp"

#include "hahn/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <system_error>

namespace hahn {

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

std::string print_number(const HahnNumber& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : x.terms()) {
        if (!first) out += " + ";
        first = false;
        if (t.exp.is_zero()) {
            out += format_double(t.coef);
        } else if (t.coef == 1.0) {
            out += "d^(" + t.exp.str() + ")";
        } else {
            out += format_double(t.coef) + "*d^(" + t.exp.str() + ")";
        }
    }
    return out;
}

namespace {

/// Shared cursor for both the canonical-number parser and the expression
/// evaluator. Offsets in errors are 0-based into the original string.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    std::size_t pos() const noexcept { return pos_; }
    bool done() const noexcept { return pos_ >= text_.size(); }
    char peek() const noexcept { return done() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!done() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
    }

    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!consume(c)) throw SyntaxError(std::string("expected ") + what, pos_);
    }

    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

    /// Float literal via from_chars; no leading sign (handled by callers).
    double parse_float() {
        if (done() || !(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
            fail("expected number");
        }
        double value = 0.0;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        const auto res = std::from_chars(begin, end, value);
        if (res.ec != std::errc()) fail("malformed number");
        pos_ += static_cast<std::size_t>(res.ptr - begin);
        return value;
    }

    /// Signed integer digits as BigInt.
    BigInt parse_bigint(bool allow_sign) {
        std::size_t start = pos_;
        if (allow_sign && peek() == '-') ++pos_;
        std::size_t digits = pos_;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == digits) fail("expected integer");
        return BigInt(std::string(text_.substr(start, pos_ - start)));
    }

    Rational parse_rational() {
        BigInt num = parse_bigint(true);
        BigInt den(1);
        if (consume('/')) {
            std::size_t den_pos = pos_;
            den = parse_bigint(false);
            if (den == 0) throw SyntaxError("zero denominator", den_pos);
        }
        return Rational(std::move(num), std::move(den));
    }

    /// "d^(" rat ")" with the leading 'd' already consumed.
    Rational parse_exponent_suffix() {
        expect('^', "'^'");
        expect('(', "'('");
        Rational r = parse_rational();
        expect(')', "')'");
        return r;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

HahnNumber parse_number(std::string_view text) {
    Cursor c(text);
    c.skip_ws();
    if (c.done()) c.fail("empty input");

    std::vector<Term> terms;
    for (;;) {
        double coef = 1.0;
        bool have_coef = false;
        if (c.peek() == '-') {
            // Sign belongs to the coefficient literal.
            c.consume('-');
            coef = -c.parse_float();
            have_coef = true;
        } else if (c.peek() != 'd') {
            coef = c.parse_float();
            have_coef = true;
        }

        Rational exp(0);
        if (!have_coef) {
            c.expect('d', "'d'");
            exp = c.parse_exponent_suffix();
        } else if (c.consume('*')) {
            c.expect('d', "'d'");
            exp = c.parse_exponent_suffix();
        }
        terms.push_back(Term{std::move(exp), coef});

        c.skip_ws();
        if (c.done()) break;
        c.expect('+', "'+' between terms");
        c.skip_ws();
        if (c.done()) c.fail("dangling '+'");
    }

    // "0" alone is the zero element; a zero coefficient inside a sum is a
    // plain term that normalization drops.
    return HahnNumber::make(std::move(terms));
}

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : c_(text) {}

    HahnNumber parse() {
        HahnNumber v = sum();
        c_.skip_ws();
        if (!c_.done()) c_.fail("unexpected trailing input");
        return v;
    }

private:
    HahnNumber sum() {
        HahnNumber v = product();
        for (;;) {
            c_.skip_ws();
            if (c_.consume('+')) {
                v = v + product();
            } else if (c_.consume('-')) {
                v = v - product();
            } else {
                return v;
            }
        }
    }

    HahnNumber product() {
        HahnNumber v = factor();
        for (;;) {
            c_.skip_ws();
            if (c_.consume('*')) {
                v = v * factor();
            } else {
                return v;
            }
        }
    }

    HahnNumber factor() {
        c_.skip_ws();
        if (c_.consume('-')) return -factor();
        if (c_.consume('(')) {
            HahnNumber v = sum();
            c_.skip_ws();
            c_.expect(')', "')'");
            return v;
        }
        if (c_.peek() == 'd') {
            c_.consume('d');
            if (c_.peek() == '^') return HahnNumber::monomial(1.0, c_.parse_exponent_suffix());
            return HahnNumber::d();
        }
        return HahnNumber::real(c_.parse_float());
    }

    Cursor c_;
};

}  // namespace

HahnNumber eval_expression(std::string_view text) { return ExprParser(text).parse(); }

nlohmann::ordered_json number_to_json(const HahnNumber& x) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& t : x.terms()) {
        terms.push_back({{"exp", t.exp.str()}, {"coef", t.coef}});
    }
    return {{"terms", std::move(terms)}, {"cutoff", x.cutoff().str()}};
}

HahnNumber number_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("terms") || !j.contains("cutoff")) {
        throw SyntaxError("number JSON must have \"terms\" and \"cutoff\"", 0);
    }
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
        terms.push_back(Term{Rational::parse(t.at("exp").get<std::string>()),
                             t.at("coef").get<double>()});
    }
    const auto cut = j.at("cutoff").get<std::string>();
    ExtRational cutoff = cut == "inf" ? ExtRational::infinity() : ExtRational(Rational::parse(cut));
    return HahnNumber::make(std::move(terms), std::move(cutoff));
}

}  // namespace hahn
