#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "fujita/exact/errors.hpp"
#include "fujita/exact/rational.hpp"

namespace fujita {

enum class Sign { Positive, Negative, Zero, Unknown };

inline const char* to_string(Sign s) {
    switch (s) {
    case Sign::Positive: return "Positive";
    case Sign::Negative: return "Negative";
    case Sign::Zero: return "Zero";
    case Sign::Unknown: return "Unknown";
    }
    return "?";
}

/// Closed interval [lo, hi] with exact rational endpoints.
///
/// All operations are sound: the exact result of the operation applied to any
/// members of the operands lies in the output. No floating point is involved.
class Enclosure {
public:
    Enclosure() = default;
    Enclosure(const Rational& point) : lo_(point), hi_(point) {} // NOLINT(google-explicit-constructor)
    Enclosure(int point) : lo_(point), hi_(point) {}             // NOLINT(google-explicit-constructor)
    Enclosure(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (hi_ < lo_) throw DomainError("enclosure with lo > hi: [" + lo_.str() + ", " + hi_.str() + "]");
    }

    const Rational& lo() const noexcept { return lo_; }
    const Rational& hi() const noexcept { return hi_; }

    bool is_point() const { return lo_ == hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational midpoint() const { return (lo_ + hi_) / Rational(2); }
    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Enclosure& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    Rational mag() const { return max(abs(lo_), abs(hi_)); }

    /// Outward rounding to multiples of 2^-bits. Keeps enclosures small when
    /// long computations would otherwise blow up denominators.
    Enclosure rounded(unsigned long bits) const {
        return {round_down(lo_, bits), round_up(hi_, bits)};
    }
    std::size_t max_denominator_bits() const {
        return std::max(lo_.denominator_bits(), hi_.denominator_bits());
    }

    Enclosure operator-() const { return {-hi_, -lo_}; }

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return {a.lo_ + b.lo_, a.hi_ + b.hi_};
    }
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b) {
        return {a.lo_ - b.hi_, a.hi_ - b.lo_};
    }
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
        if (a.is_point() && b.is_point()) return Enclosure(a.lo_ * b.lo_);
        Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
        return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
    }
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b) {
        if (b.contains_zero())
            throw DivisionByZero("division by enclosure containing zero [" + b.lo_.str() + ", " + b.hi_.str() + "]");
        return a * Enclosure(Rational(1) / b.hi_, Rational(1) / b.lo_);
    }

    Enclosure& operator+=(const Enclosure& o) { return *this = *this + o; }
    Enclosure& operator-=(const Enclosure& o) { return *this = *this - o; }
    Enclosure& operator*=(const Enclosure& o) { return *this = *this * o; }
    Enclosure& operator/=(const Enclosure& o) { return *this = *this / o; }

    friend bool operator==(const Enclosure& a, const Enclosure& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

    std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }
    friend std::ostream& operator<<(std::ostream& os, const Enclosure& e) { return os << e.str(); }

private:
    Rational lo_{0};
    Rational hi_{0};
};

inline Enclosure hull(const Enclosure& a, const Enclosure& b) {
    return {min(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

/// Intersection; nullopt when disjoint.
inline std::optional<Enclosure> intersect(const Enclosure& a, const Enclosure& b) {
    const Rational& lo = max(a.lo(), b.lo());
    const Rational& hi = min(a.hi(), b.hi());
    if (hi < lo) return std::nullopt;
    return Enclosure(lo, hi);
}

inline Enclosure min(const Enclosure& a, const Enclosure& b) {
    return {min(a.lo(), b.lo()), min(a.hi(), b.hi())};
}
inline Enclosure max(const Enclosure& a, const Enclosure& b) {
    return {max(a.lo(), b.lo()), max(a.hi(), b.hi())};
}

/// Integer power. Even powers of a sign-straddling interval start at 0.
/// Negative exponents require 0 outside the base.
inline Enclosure pow(const Enclosure& x, long k) {
    if (k < 0) return Enclosure(1) / pow(x, -k);
    if (k == 0) return Enclosure(1);
    Rational a = pow(x.lo(), k), b = pow(x.hi(), k);
    if (k % 2 == 1) return {a, b};
    if (x.lo().sign() >= 0) return {a, b};
    if (x.hi().sign() <= 0) return {b, a};
    return {Rational(0), max(a, b)};
}

inline Sign certify_sign(const Enclosure& e) {
    if (e.lo().sign() > 0) return Sign::Positive;
    if (e.hi().sign() < 0) return Sign::Negative;
    if (e.lo().sign() == 0 && e.hi().sign() == 0) return Sign::Zero;
    return Sign::Unknown;
}

namespace detail {

// Exact n-th root of a non-negative integer, if it is a perfect power.
inline std::optional<mpz_class> exact_root(const mpz_class& v, unsigned long n) {
    mpz_class r;
    if (mpz_root(r.get_mpz_t(), v.get_mpz_t(), n) != 0) return r;
    return std::nullopt;
}

} // namespace detail

/// Enclosure [lo, hi] of x^(1/n) with lo^n <= x <= hi^n and hi - lo <= eps.
/// Perfect n-th powers of rationals come back as point enclosures.
inline Enclosure nth_root(const Rational& x, unsigned long n, const Rational& eps) {
    if (n == 0) throw DomainError("zeroth root");
    if (x.sign() < 0) throw DomainError("n-th root of negative number " + x.str());
    if (eps.sign() <= 0) throw DomainError("nth_root needs eps > 0");
    if (n == 1 || x.sign() == 0) return Enclosure(x);

    auto rn = detail::exact_root(x.numerator(), n);
    auto rd = detail::exact_root(x.denominator(), n);
    if (rn && rd) return Enclosure(Rational(*rn, *rd));

    // Integer bracket floor(root) .. floor(root)+1 for x >= 1; [0, 1] otherwise.
    Rational lo(0), hi(1);
    if (x >= Rational(1)) {
        mpz_class k;
        mpz_root(k.get_mpz_t(), mpz_class(x.floor()).get_mpz_t(), n);
        lo = Rational(k);
        hi = Rational(mpz_class(k + 1));
    }
    // Dyadic bisection keeps denominators powers of two.
    while (hi - lo > eps) {
        Rational mid = (lo + hi) / Rational(2);
        int c = cmp(pow(mid, static_cast<long>(n)).raw(), x.raw());
        if (c == 0) return Enclosure(mid);
        if (c < 0) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

/// Root of an enclosure: monotone, so take the outer roots of the endpoints.
inline Enclosure nth_root(const Enclosure& x, unsigned long n, const Rational& eps) {
    if (x.lo().sign() < 0) throw DomainError("n-th root of enclosure reaching below zero " + x.str());
    if (x.is_point()) return nth_root(x.lo(), n, eps);
    return {nth_root(x.lo(), n, eps).lo(), nth_root(x.hi(), n, eps).hi()};
}

} // namespace fujita
