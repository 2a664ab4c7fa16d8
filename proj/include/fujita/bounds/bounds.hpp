#pragma once

#include <string>

#include "fujita/exact/enclosure.hpp"
#include "fujita/expr/polynomial.hpp"

namespace fujita::bounds {

/// Parameters of a deficit estimate around a minimal log canonical center.
struct DeficitBoundInputs {
    int d = 1;            // dimension of the center
    int e = 1;            // embedding dimension
    int m = 1;            // multiplicity
    int n = 5;            // ambient dimension
    Rational sigma{59999, 10000};
    Enclosure lambda{0};
    Enclosure beta{1};      // upper bound for the deficit of G
    Enclosure beta_prime{1}; // upper bound for the deficit of G'
};

inline Rational default_eps() { return {1, 1000000000000LL}; }

// ---------------------------------------------------------------------------
// beta_{d,e}(m) and alpha_{d,e}(m)

namespace detail {

inline Rational factorial(int k) {
    Rational f(1);
    for (int i = 2; i <= k; ++i) f *= Rational(i);
    return f;
}

inline Rational binomial(long n, long k) {
    if (k < 0 || n < k) return Rational(0);
    Rational r(1);
    for (long i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
    return r;
}

// prod_{i<e-d} (e - y - i) - m (e-d)!  as a polynomial in y.
inline Polynomial beta_polynomial(int d, int e, int m) {
    Polynomial p = Polynomial::constant(1);
    for (int i = 0; i < e - d; ++i) p = p * Polynomial({Rational(e - i), Rational(-1)});
    return p - Polynomial::constant(Rational(m) * factorial(e - d));
}

inline void check_de(int d, int e, int m) {
    if (d < 1 || e < d) throw DomainError("need e >= d >= 1, got d=" + std::to_string(d) + " e=" + std::to_string(e));
    if (m < 1) throw DomainError("multiplicity must be >= 1");
}

} // namespace detail

/// Enclosure of the largest real y <= d with C(e - y, e - d) = m, the
/// binomial read as a polynomial in y.
///
/// On y <= d every factor e - y - i is >= 1 and decreasing in y, so the
/// defining polynomial P is strictly decreasing there and P(d) = (1-m)(e-d)! <= 0.
/// A root in [1, d] exists iff P(1) >= 0, i.e. m <= C(e-1, e-d).
inline Enclosure beta_de(int d, int e, int m, const Rational& eps = default_eps()) {
    detail::check_de(d, e, m);
    if (e == d) {
        if (m == 1) return Enclosure(d);
        throw DomainError("C(e-y, 0) = 1 cannot equal m = " + std::to_string(m));
    }
    Rational cap = detail::binomial(e - 1, e - d);
    if (Rational(m) > cap)
        throw DomainError("multiplicity " + std::to_string(m) + " exceeds C(e-1, d-1) = " + cap.str() +
                          " for d=" + std::to_string(d) + ", e=" + std::to_string(e));
    Polynomial p = detail::beta_polynomial(d, e, m);
    Rational lo(1), hi(d);
    if (p(hi).sign() == 0) return Enclosure(hi);
    if (p(lo).sign() == 0) return Enclosure(lo);
    // invariant: p(lo) > 0 > p(hi)
    while (hi - lo > eps) {
        Rational mid = (lo + hi) / Rational(2);
        int s = p(mid).sign();
        if (s == 0) return Enclosure(mid);
        (s > 0 ? lo : hi) = mid;
    }
    return {lo, hi};
}

/// floor(beta_{d,e}(m)). The enclosure is refined below unit width; an
/// integer k inside it is settled by the exact sign of P(k) (P decreasing:
/// P(k) >= 0 iff the root is >= k).
inline int alpha_de(int d, int e, int m) {
    Enclosure b = beta_de(d, e, m, Rational(1, 2));
    mpz_class f_lo = b.lo().floor(), f_hi = b.hi().floor();
    if (f_lo == f_hi || e == d) return static_cast<int>(f_lo.get_si());
    Rational k(f_hi);
    int s = detail::beta_polynomial(d, e, m)(k).sign();
    return static_cast<int>(s >= 0 ? f_hi.get_si() : f_lo.get_si());
}

// ---------------------------------------------------------------------------
// mu(w): minimal mu > 0 with (w/sigma + mu)^n <= mu (1 + mu)^(n-1)

namespace detail {

// F(mu) = mu (1+mu)^(n-1) - (w/sigma + mu)^n; the inequality is F >= 0.
inline Polynomial mu_polynomial(const Rational& w, const Rational& sigma, int n) {
    Polynomial one_plus = Polynomial({Rational(1), Rational(1)});
    Polynomial shifted = Polynomial({w / sigma, Rational(1)});
    Polynomial a = Polynomial::identity(), b = Polynomial::constant(1);
    for (int i = 0; i < n - 1; ++i) a = a * one_plus;
    for (int i = 0; i < n; ++i) b = b * shifted;
    return a - b;
}

inline int sign_changes(const Polynomial& p) {
    int changes = 0, last = 0;
    for (const auto& c : p.coeffs()) {
        if (c.sign() == 0) continue;
        if (last != 0 && c.sign() != last) ++changes;
        last = c.sign();
    }
    return changes;
}

} // namespace detail

struct MuResult {
    Enclosure mu;
    int descartes_sign_changes = 0; // 1 certifies a unique positive root
};

inline MuResult mu_min_detailed(const Rational& w, const Rational& sigma, int n, const Rational& eps = default_eps()) {
    if (w.sign() < 0 || w >= Rational(n - 1)) throw DomainError("mu(w) needs 0 <= w < n - 1, got w = " + w.str());
    if (sigma <= Rational(n)) throw DomainError("mu(w) needs sigma > n");
    if (w.sign() == 0) return {Enclosure(0), 0};
    Polynomial f = detail::mu_polynomial(w, sigma, n);
    int changes = detail::sign_changes(f);
    // F(0) < 0 and F -> +inf; exactly one coefficient sign change means
    // exactly one positive root, below which F < 0 and above which F > 0.
    if (changes != 1)
        throw IntegrityError("mu(w): Descartes bound " + std::to_string(changes) + " does not isolate a unique positive root");
    Rational lo(0), hi(1);
    while (f(hi).sign() < 0) {
        lo = hi;
        hi *= Rational(2);
    }
    while (hi - lo > eps) {
        Rational mid = (lo + hi) / Rational(2);
        int s = f(mid).sign();
        if (s == 0) return {Enclosure(mid), changes};
        (s > 0 ? hi : lo) = mid;
    }
    return {Enclosure(lo, hi), changes};
}

/// Enclosure of mu(w). At hi the defining inequality holds exactly; just
/// below lo it fails.
inline Enclosure mu_min(const Rational& w, const Rational& sigma, int n, const Rational& eps = default_eps()) {
    return mu_min_detailed(w, sigma, n, eps).mu;
}

/// Whether the defining inequality (w/sigma + mu)^n <= mu (1+mu)^(n-1) holds, exactly.
inline bool mu_inequality_holds(const Rational& w, const Rational& sigma, int n, const Rational& mu) {
    return detail::mu_polynomial(w, sigma, n)(mu).sign() >= 0;
}

// ---------------------------------------------------------------------------
// Closed-form bounds

namespace detail {

inline void require_positive(const Enclosure& den, const std::string& what) {
    if (den.lo().sign() <= 0)
        throw DomainError("denominator of " + what + " is not certified positive: " + den.str());
}

// m^(1/d) / sigma
inline Enclosure root_ratio(int m, int d, const Rational& sigma, const Rational& eps) {
    return nth_root(Rational(m), static_cast<unsigned long>(d), eps) / Enclosure(sigma);
}

} // namespace detail

/// sigma beta / (sigma - n + beta): bound on def/(1 - lambda).
inline Enclosure main_lemma_bound(const Rational& sigma, int n, const Enclosure& beta) {
    if (sigma <= Rational(n)) throw DomainError("the deficit bound sigma beta/(sigma - n + beta) needs sigma > n");
    if (beta.lo().sign() <= 0) throw DomainError("the deficit bound needs beta > 0");
    Enclosure den = Enclosure(sigma - Rational(n)) + beta;
    detail::require_positive(den, "sigma*beta/(sigma - n + beta)");
    return Enclosure(sigma) * beta / den;
}

struct PhiLines {
    Enclosure far;  // 3 - 0.0391 (q - sigma), the q > 10 line
    Enclosure near; // 3.9999 - 0.2884 (q - sigma), the q <= 10 line
};

inline PhiLines phi_lines(const Enclosure& q, const Rational& sigma) {
    if (q.lo() < sigma) throw DomainError("phi lower bound needs q >= sigma, got " + q.str());
    Enclosure shift = q - Enclosure(sigma);
    return {Enclosure(3) - Enclosure(Rational(391, 10000)) * shift,
            Enclosure(Rational(39999, 10000)) - Enclosure(Rational(2884, 10000)) * shift};
}

/// Lower bound for phi(q) as the pointwise max of the two lines.
/// q = sigma is accepted as the limit of q > sigma.
inline Enclosure phi_lower(const Enclosure& q, const Rational& sigma) {
    PhiLines l = phi_lines(q, sigma);
    return max(l.far, l.near);
}

/// The split reading: far line for q > 10, near line for sigma < q <= 10,
/// hull of both when q straddles 10.
inline Enclosure phi_lower_split(const Enclosure& q, const Rational& sigma) {
    PhiLines l = phi_lines(q, sigma);
    if (q.lo() > Rational(10)) return l.far;
    if (q.hi() <= Rational(10)) return l.near;
    return hull(l.far, l.near);
}

/// Bound on the deficit ratio after one cutting step:
///   def > beta':  beta' / ((1 - lambda) - def t + beta' t),  t = m^(1/d)/sigma
///   def <= beta': def / (1 - lambda)
/// Hull of both when the comparison is not decided by the enclosures.
inline Enclosure estofq_bound(const DeficitBoundInputs& in, const Enclosure& def, const Rational& eps = default_eps()) {
    Enclosure one_minus = Enclosure(1) - in.lambda;
    detail::require_positive(one_minus, "1 - lambda");
    auto cut = [&] {
        Enclosure t = detail::root_ratio(in.m, in.d, in.sigma, eps);
        Enclosure den = one_minus - def * t + in.beta_prime * t;
        detail::require_positive(den, "the cutting-step bound");
        return in.beta_prime / den;
    };
    auto plain = [&] { return def / one_minus; };
    if (def.lo() > in.beta_prime.hi()) return cut();
    if (def.hi() <= in.beta_prime.lo()) return plain();
    return hull(cut(), plain());
}

/// beta' / ((sigma - n + beta)/sigma - m^(1/d) (beta - beta')/sigma)
inline Enclosure intermediate_bound(const DeficitBoundInputs& in, const Rational& eps = default_eps()) {
    Enclosure gap = in.beta - in.beta_prime;
    if (gap.hi().sign() < 0) throw DomainError("intermediate bound needs beta >= beta'");
    Enclosure t = detail::root_ratio(in.m, in.d, in.sigma, eps);
    Enclosure den = (Enclosure(in.sigma - Rational(in.n)) + in.beta) / Enclosure(in.sigma) - t * gap;
    detail::require_positive(den, "the intermediate bound");
    return in.beta_prime / den;
}

/// (n - m + mu sigma) / (1 + mu)
inline Enclosure divisor_center_bound(int n, int m, const Enclosure& mu, const Rational& sigma) {
    if (m < 1) throw DomainError("multiplicity must be >= 1");
    if (mu.lo().sign() < 0) throw DomainError("mu must be non-negative");
    return (Enclosure(Rational(n - m)) + mu * Enclosure(sigma)) / (Enclosure(1) + mu);
}

} // namespace fujita::bounds
