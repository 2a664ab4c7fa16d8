#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "fujita/exact/enclosure.hpp"

using fujita::Enclosure;
using fujita::Rational;
using fujita::Sign;

namespace {

Rational R(const char* s) { return Rational::parse(s); }

// Random rational with small numerator/denominator, in [-bound, bound].
Rational random_rational(std::mt19937_64& rng, long bound = 20) {
    std::uniform_int_distribution<long> den(1, 97);
    long d = den(rng);
    std::uniform_int_distribution<long> num(-bound * d, bound * d);
    return {num(rng), d};
}

Enclosure random_enclosure(std::mt19937_64& rng) {
    Rational a = random_rational(rng), b = random_rational(rng);
    return {fujita::min(a, b), fujita::max(a, b)};
}

// Uniform-ish rational member of e.
Rational member(std::mt19937_64& rng, const Enclosure& e) {
    std::uniform_int_distribution<long> t(0, 1000);
    return e.lo() + e.width() * Rational(t(rng), 1000);
}

bool canonical(const Rational& r) {
    return r.denominator() > 0 && fujita::gcd_check(r) == 1;
}

} // namespace

TEST(Rational, ParsesPaperDecimalsExactly) {
    EXPECT_EQ(R("5.9999"), Rational(59999, 10000));
    EXPECT_EQ(R("-0.0391"), Rational(-391, 10000));
    EXPECT_EQ(R("20/7"), Rational(20, 7));
    EXPECT_EQ(R("1e-6"), Rational(1, 1000000));
    EXPECT_EQ(R("2.5E+3"), Rational(2500));
    EXPECT_EQ(R(" 3 "), Rational(3));
    EXPECT_THROW(R("abc"), fujita::DomainError);
    EXPECT_THROW(R(""), fujita::DomainError);
    EXPECT_THROW(R("1/0"), fujita::DivisionByZero);
    EXPECT_THROW(R("1e"), fujita::DomainError);
}

TEST(Rational, SigmaShift) {
    EXPECT_EQ(Rational(59999, 10000) - 5 + 1, Rational(19999, 10000));
}

TEST(Rational, DerivedConstantsOfTheMultiplicityTwoCase) {
    // Oracle: integer arithmetic on scaled values, 10^8 = 10^4 * 10^4.
    long long c1_scaled = 3LL * 100000000 + 391LL * 59999;
    long long c2_scaled = 2884LL * 59999 + 39999LL * 10000;
    EXPECT_EQ(c1_scaled, 323459609);
    EXPECT_EQ(c2_scaled, 573027116);
    EXPECT_EQ(Rational(3) + R("0.0391") * R("5.9999"), Rational(323459609, 100000000));
    EXPECT_EQ(R("0.2884") * R("5.9999") + R("3.9999"), Rational(573027116, 100000000));
}

TEST(Rational, DivisionByZeroIsAnError) {
    EXPECT_THROW(Rational(1) / Rational(0), fujita::DivisionByZero);
    EXPECT_THROW(fujita::pow(Rational(0), -2), fujita::DivisionByZero);
}

TEST(Rational, PowAndOrder) {
    EXPECT_EQ(fujita::pow(Rational(2, 3), 3), Rational(8, 27));
    EXPECT_EQ(fujita::pow(Rational(2, 3), -2), Rational(9, 4));
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_EQ(Rational(7, 2).floor(), 3);
    EXPECT_EQ(Rational(-7, 2).floor(), -4);
    EXPECT_EQ(Rational(-7, 2).ceil(), -3);
}

TEST(Rational, DecimalRendering) {
    EXPECT_EQ(Rational(323459609, 100000000).decimal(8), "3.23459609");
    EXPECT_EQ(Rational(-1, 8).decimal(3), "-0.125");
    EXPECT_EQ(Rational(1, 3).decimal(4), "0.3333");
}

TEST(Rational, CanonicalFormAfterRandomOps) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        Rational a = random_rational(rng), b = random_rational(rng);
        ASSERT_TRUE(canonical(a + b));
        ASSERT_TRUE(canonical(a - b));
        ASSERT_TRUE(canonical(a * b));
        if (b.sign() != 0) {
            ASSERT_TRUE(canonical(a / b));
        }
    }
}

TEST(Rational, OutwardRoundingBracketsValue) {
    Rational third(1, 3);
    Rational lo = fujita::round_down(third, 10), hi = fujita::round_up(third, 10);
    EXPECT_LE(lo, third);
    EXPECT_GE(hi, third);
    EXPECT_EQ(hi - lo, Rational(1, 1024));
    EXPECT_EQ(fujita::round_down(Rational(3, 4), 10), Rational(3, 4));
}

TEST(Enclosure, BasicOps) {
    EXPECT_EQ(Enclosure(1, 2) + Enclosure(3, 4), Enclosure(4, 6));
    EXPECT_EQ(Enclosure(-1, 1) * Enclosure(-1, 1), Enclosure(-1, 1));
    EXPECT_EQ(Enclosure(2, 3) / Enclosure(1, 2), Enclosure(1, 3));
    EXPECT_THROW(Enclosure(1) / Enclosure(-1, 1), fujita::DivisionByZero);
    EXPECT_THROW(Enclosure(2, 1), fujita::DomainError);
}

TEST(Enclosure, QuotientMatchesEndpointEnumeration) {
    // Oracle: min/max over the four endpoint quotients.
    Enclosure a(2, 3), b(1, 2);
    std::vector<Rational> q{Rational(2) / 1, Rational(2) / 2, Rational(3) / 1, Rational(3) / 2};
    Rational lo = q[0], hi = q[0];
    for (auto& v : q) { lo = fujita::min(lo, v); hi = fujita::max(hi, v); }
    EXPECT_EQ(a / b, Enclosure(lo, hi));
}

TEST(Enclosure, PowerSignCases) {
    EXPECT_EQ(fujita::pow(Enclosure(-2, 1), 2), Enclosure(0, 4));
    EXPECT_EQ(fujita::pow(Enclosure(-2, -1), 2), Enclosure(1, 4));
    EXPECT_EQ(fujita::pow(Enclosure(-2, 1), 3), Enclosure(-8, 1));
    EXPECT_EQ(fujita::pow(Enclosure(1, 2), -1), Enclosure(Rational(1, 2), Rational(1)));
}

TEST(Enclosure, CertifySign) {
    EXPECT_EQ(fujita::certify_sign(Enclosure(Rational(1, 10), Rational(1, 5))), Sign::Positive);
    EXPECT_EQ(fujita::certify_sign(Enclosure(0)), Sign::Zero);
    EXPECT_EQ(fujita::certify_sign(Enclosure(-1, 1)), Sign::Unknown);
    EXPECT_EQ(fujita::certify_sign(Enclosure(-3, -1)), Sign::Negative);
    EXPECT_EQ(fujita::certify_sign(Enclosure(0, 1)), Sign::Unknown);
}

TEST(Enclosure, SoundnessFuzz) {
    std::mt19937_64 rng(20240501);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
        Enclosure A = random_enclosure(rng), B = random_enclosure(rng);
        Rational a = member(rng, A), b = member(rng, B);
        if (!(A + B).contains(a + b)) ++violations;
        if (!(A - B).contains(a - b)) ++violations;
        if (!(A * B).contains(a * b)) ++violations;
        if (!fujita::min(A, B).contains(fujita::min(a, b))) ++violations;
        if (!fujita::max(A, B).contains(fujita::max(a, b))) ++violations;
        long k = static_cast<long>(i % 5);
        if (!fujita::pow(A, k).contains(fujita::pow(a, k))) ++violations;
        if (!B.contains_zero() && !(A / B).contains(a / b)) ++violations;
    }
    EXPECT_EQ(violations, 0);
}

TEST(Enclosure, MonotoneRefinement) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        Enclosure A = random_enclosure(rng), B = random_enclosure(rng);
        Rational a1 = member(rng, A), a2 = member(rng, A);
        Enclosure As(fujita::min(a1, a2), fujita::max(a1, a2));
        ASSERT_TRUE((A + B).contains(As + B));
        ASSERT_TRUE((A * B).contains(As * B));
        ASSERT_TRUE(fujita::pow(A, 2).contains(fujita::pow(As, 2)));
        if (!B.contains_zero()) {
            ASSERT_TRUE((A / B).contains(As / B));
        }
    }
}

TEST(NthRoot, PerfectPowersAreExact) {
    EXPECT_EQ(fujita::nth_root(Rational(16), 4, Rational(1, 10)), Enclosure(2));
    EXPECT_EQ(fujita::nth_root(Rational(1), 7, Rational(1, 10)), Enclosure(1));
    EXPECT_EQ(fujita::nth_root(Rational(8, 27), 3, Rational(1, 10)), Enclosure(Rational(2, 3)));
    EXPECT_EQ(fujita::nth_root(Rational(0), 3, Rational(1, 10)), Enclosure(0));
    EXPECT_THROW(fujita::nth_root(Rational(-1), 3, Rational(1, 10)), fujita::DomainError);
}

TEST(NthRoot, FourthRootOfTwo) {
    Rational eps(1, 1000000);
    Enclosure e = fujita::nth_root(Rational(2), 4, eps);
    EXPECT_LE(e.width(), eps);
    // Oracle: decimal bisection of y^4 = 2 on [1, 2], independent of the dyadic scheme.
    Rational lo(1), hi(2);
    for (int i = 0; i < 40; ++i) {
        Rational mid = (lo + hi) / 2;
        (fujita::pow(mid, 4) < Rational(2) ? lo : hi) = mid;
    }
    EXPECT_TRUE(e.contains(lo));
    EXPECT_TRUE(e.contains(hi));
}

TEST(NthRoot, ConsistencyOnRandomInputs) {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long> num(0, 100000), den(1, 1000), deg(2, 6);
    for (int i = 0; i < 1000; ++i) {
        Rational x(num(rng), den(rng));
        long n = deg(rng);
        Rational eps(1, 1 << (i % 30));
        Enclosure e = fujita::nth_root(x, static_cast<unsigned long>(n), eps);
        ASSERT_LE(fujita::pow(e.lo(), n), x);
        ASSERT_GE(fujita::pow(e.hi(), n), x);
        ASSERT_LE(e.width(), eps);
    }
}

TEST(NthRoot, EnclosureArgument) {
    Enclosure e = fujita::nth_root(Enclosure(2, 3), 2, Rational(1, 1000));
    EXPECT_LE(fujita::pow(e.lo(), 2), Rational(2));
    EXPECT_GE(fujita::pow(e.hi(), 2), Rational(3));
}
