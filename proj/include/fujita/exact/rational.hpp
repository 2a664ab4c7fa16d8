#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "fujita/exact/errors.hpp"

namespace fujita {

/// Exact rational number in canonical form (gcd(num, den) = 1, den > 0).
///
/// Thin value wrapper over GMP's mpq_class. Every operation is exact; the
/// only way to lose information is an explicit call to round_down/round_up.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : q_(static_cast<long>(n)) {} // NOLINT(google-explicit-constructor)
    Rational(long n) : q_(n) {}                         // NOLINT(google-explicit-constructor)
    Rational(int n) : q_(static_cast<long>(n)) {}       // NOLINT(google-explicit-constructor)
    Rational(long long num, long long den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
        q_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw DivisionByZero("rational with zero denominator");
        q_ = mpq_class(num, den);
        q_.canonicalize();
    }
    explicit Rational(const mpz_class& n) : q_(n) {}
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

    /// Parses "p/q", integers, and decimal strings ("5.9999", "-0.0391",
    /// "1e-6", "2.5E+3") exactly. Throws DomainError on malformed input.
    static Rational parse(std::string_view text) {
        std::string s(text);
        auto trim = [](std::string& v) {
            auto b = v.find_first_not_of(" \t\n\r");
            auto e = v.find_last_not_of(" \t\n\r");
            v = b == std::string::npos ? std::string{} : v.substr(b, e - b + 1);
        };
        trim(s);
        if (s.empty()) throw DomainError("cannot parse empty string as rational");

        if (auto slash = s.find('/'); slash != std::string::npos) {
            Rational num = parse(s.substr(0, slash));
            Rational den = parse(s.substr(slash + 1));
            return num / den;
        }

        bool negative = false;
        std::size_t pos = 0;
        if (s[pos] == '+' || s[pos] == '-') {
            negative = s[pos] == '-';
            ++pos;
        }
        std::string digits;
        long exponent = 0;
        bool seen_dot = false;
        bool seen_digit = false;
        for (; pos < s.size(); ++pos) {
            char c = s[pos];
            if (c >= '0' && c <= '9') {
                digits.push_back(c);
                seen_digit = true;
                if (seen_dot) --exponent;
            } else if (c == '.' && !seen_dot) {
                seen_dot = true;
            } else if (c == 'e' || c == 'E') {
                break;
            } else {
                throw DomainError("malformed rational literal '" + s + "'");
            }
        }
        if (!seen_digit) throw DomainError("malformed rational literal '" + s + "'");
        if (pos < s.size()) {
            std::string ex = s.substr(pos + 1);
            if (ex.empty()) throw DomainError("malformed exponent in '" + s + "'");
            std::size_t used = 0;
            long e = 0;
            try {
                e = std::stol(ex, &used);
            } catch (const std::exception&) {
                throw DomainError("malformed exponent in '" + s + "'");
            }
            if (used != ex.size()) throw DomainError("malformed exponent in '" + s + "'");
            exponent += e;
        }
        mpz_class mantissa(digits, 10);
        if (negative) mantissa = -mantissa;
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        return exponent < 0 ? Rational(mantissa, scale) : Rational(mpz_class(mantissa * scale));
    }

    /// Exact dyadic value m / 2^k.
    static Rational dyadic(const mpz_class& m, unsigned long k) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
        return {m, den};
    }

    const mpq_class& raw() const noexcept { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    mpz_class floor() const {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }
    mpz_class ceil() const {
        mpz_class r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }

    /// Size of the representation in bits (numerator + denominator).
    std::size_t bit_size() const {
        return mpz_sizeinbase(q_.get_num_mpz_t(), 2) + mpz_sizeinbase(q_.get_den_mpz_t(), 2);
    }
    std::size_t denominator_bits() const { return mpz_sizeinbase(q_.get_den_mpz_t(), 2); }

    double to_double() const { return q_.get_d(); }

    /// "p/q", or "p" for integers.
    std::string str() const {
        if (is_integer()) return q_.get_num().get_str();
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

    /// Decimal rendering truncated toward zero after `digits` fractional digits.
    /// Display only.
    std::string decimal(int digits = 10) const {
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
        mpz_class scaled = q_.get_num() * scale;
        mpz_class t;
        mpz_tdiv_q(t.get_mpz_t(), scaled.get_mpz_t(), q_.get_den_mpz_t());
        bool neg = t < 0 || (t == 0 && sign() < 0);
        if (t < 0) t = -t;
        std::string s = t.get_str();
        if (digits == 0) return (neg ? "-" : "") + s;
        if (s.size() <= static_cast<std::size_t>(digits))
            s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
        s.insert(s.size() - static_cast<std::size_t>(digits), ".");
        return (neg ? "-" : "") + s;
    }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.sign() == 0) throw DivisionByZero("rational division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

/// Integer power; negative exponents invert (and throw on zero base).
inline Rational pow(const Rational& base, long exponent) {
    if (exponent < 0) {
        if (base.sign() == 0) throw DivisionByZero("zero to a negative power");
        return Rational(1) / pow(base, -exponent);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return {num, den};
}

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }
inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Largest multiple of 2^-bits not above x.
inline Rational round_down(const Rational& x, unsigned long bits) {
    mpz_class scaled = x.numerator();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.raw().get_den_mpz_t());
    return Rational::dyadic(q, bits);
}

/// Smallest multiple of 2^-bits not below x.
inline Rational round_up(const Rational& x, unsigned long bits) {
    mpz_class scaled = x.numerator();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), bits);
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.raw().get_den_mpz_t());
    return Rational::dyadic(q, bits);
}

inline mpz_class gcd_check(const Rational& r) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r.raw().get_num_mpz_t(), r.raw().get_den_mpz_t());
    return g;
}

} // namespace fujita

template <>
struct std::hash<fujita::Rational> {
    std::size_t operator()(const fujita::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
