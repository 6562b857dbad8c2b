#include "sumident/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sumident {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (!all_digits(digits)) {
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    }
    std::string text(s.front() == '+' ? s.substr(1) : s);
    return BigInt(text, 10);
}

Rational parse_decimal(std::string_view text) {
    std::string_view mantissa = text;
    long exponent = 0;
    if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        const BigInt exp_value = parse_integer(text.substr(e + 1), text);
        if (!exp_value.fits_slong_p() || abs(exp_value) > 4096) {
            throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
        }
        exponent = exp_value.get_si();
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    long frac_len = 0;
    if (const auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        const auto int_part = mantissa.substr(0, dot);
        const auto frac_part = mantissa.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part))) {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        digits = std::string(int_part) + std::string(frac_part);
        frac_len = static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(mantissa)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        digits = std::string(mantissa);
    }
    BigInt num(digits, 10);
    if (negative) num = -num;
    const long shift = exponent - frac_len;
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    return shift >= 0 ? Rational(BigInt(num * scale)) : Rational(num, scale);
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt num = parse_integer(text.substr(0, slash), text);
        const auto den_text = text.substr(slash + 1);
        if (den_text.empty() || den_text.front() == '-' || den_text.front() == '+') {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        const BigInt den = parse_integer(den_text, text);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        return Rational(num, den);
    }
    if (text.find_first_of(".eE") != std::string_view::npos) return parse_decimal(text);
    return Rational(parse_integer(text, text));
}

Rational Rational::from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite double has no rational value");
    mpq_class q(value);
    return Rational(std::move(q));
}

std::string Rational::str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, unsigned long exponent) {
    BigInt num;
    BigInt den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(num, den);
}

Rational inverse(const Rational& r) { return Rational(1) / r; }

}  // namespace sumident
