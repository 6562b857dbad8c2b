#pragma once

// Exact arbitrary-precision integers and rationals.
//
// BigInt is GMP's mpz_class. Rational wraps mpq_class and keeps it canonical
// (reduced, positive denominator) after every operation, so equality is plain
// structural comparison.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>

namespace sumident {

using BigInt = mpz_class;

class Rational {
public:
    Rational() = default;
    template <std::integral I>
    Rational(I value)  // NOLINT(google-explicit-constructor)
        : value_(std::is_signed_v<I> ? mpq_class(static_cast<long>(value))
                                     : mpq_class(static_cast<unsigned long>(value))) {}
    Rational(const BigInt& value) : value_(value) {}  // NOLINT
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "p/q", an integer, or a finite decimal such as "-0.125" or
    /// "2.5e-3". Decimal input is converted exactly. Throws
    /// std::invalid_argument on malformed text or a zero denominator.
    static Rational parse(std::string_view text);

    /// Exact conversion of a finite double (every double is a dyadic rational).
    static Rational from_double(double value);

    [[nodiscard]] BigInt numerator() const { return value_.get_num(); }
    [[nodiscard]] BigInt denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    [[nodiscard]] double to_double() const { return value_.get_d(); }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
    [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
    [[nodiscard]] int sign() const { return sgn(value_); }

    /// "p/q", or "p" when the denominator is 1.
    [[nodiscard]] std::string str() const;

    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    /// Throws std::domain_error on division by zero.
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

[[nodiscard]] Rational abs(const Rational& r);
[[nodiscard]] Rational pow(const Rational& base, unsigned long exponent);
[[nodiscard]] Rational inverse(const Rational& r);

// Scalar helpers shared by the templated exact/float code paths.
inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.to_double(); }

template <class T>
T power(const T& base, unsigned long exponent) {
    if constexpr (std::is_same_v<T, Rational>) {
        return pow(base, exponent);
    } else {
        T result{1};
        for (unsigned long i = 0; i < exponent; ++i) result *= base;
        return result;
    }
}

}  // namespace sumident
