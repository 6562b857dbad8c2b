#include "sumident/rational.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using sumident::BigInt;
using sumident::Rational;

TEST(Rational, CanonicalForm) {
    const Rational q(BigInt(6), BigInt(-4));
    EXPECT_EQ(q.numerator(), BigInt(-3));
    EXPECT_EQ(q.denominator(), BigInt(2));
    EXPECT_EQ(q.str(), "-3/2");
    EXPECT_EQ(Rational(4, 2).str(), "2");
    EXPECT_EQ(Rational(0, 7).str(), "0");
}

TEST(Rational, ZeroDenominatorThrows) {
    EXPECT_THROW(Rational(BigInt(1), BigInt(0)), std::domain_error);
    EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ParseForms) {
    EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_EQ(Rational::parse("0.25"), Rational(1, 4));
    EXPECT_EQ(Rational::parse("1e-3"), Rational(1, 1000));
    EXPECT_EQ(Rational::parse("-1.5e2"), Rational(-150));
    for (const char* bad : {"", "abc", "1/0", "1//2", "1.2.3", "e5", "1/x", "--1"}) {
        EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
    }
}

TEST(Rational, ArithmeticOracle) {
    // 1/2 + 1/3 = 5/6; (5/6) * (3/5) = 1/2; 1/2 - 3/4 = -1/4
    EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
    EXPECT_EQ(Rational(5, 6) * Rational(3, 5), Rational(1, 2));
    EXPECT_EQ(Rational(1, 2) - Rational(3, 4), Rational(-1, 4));
    EXPECT_EQ(Rational(2, 3) / Rational(4, 9), Rational(3, 2));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(pow(Rational(2, 3), 3), Rational(8, 27));
    EXPECT_EQ(inverse(Rational(-2, 5)), Rational(-5, 2));
}

TEST(Rational, FieldAxiomsOnRandomValues) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = oracle::signed_rational(rng);
        const auto b = oracle::signed_rational(rng);
        const auto c = oracle::signed_rational(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a / b) * b, a);
        EXPECT_EQ(a - a, Rational(0));
        EXPECT_EQ(Rational::parse(a.str()), a);
        // Canonical: gcd 1, positive denominator.
        BigInt g;
        mpz_gcd(g.get_mpz_t(), a.numerator().get_mpz_t(), a.denominator().get_mpz_t());
        EXPECT_EQ(g, 1);
        EXPECT_GT(a.denominator(), 0);
    }
}

TEST(Rational, DoubleRoundTrip) {
    EXPECT_EQ(Rational::from_double(0.375), Rational(3, 8));
    EXPECT_DOUBLE_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
}
