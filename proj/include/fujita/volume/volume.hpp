#pragma once

// Volume chain on a threefold germ with a prime Weil divisor S through x:
// the piecewise length bound h(t, r), the resulting lower bound for the
// volume of A = (1 - lambda) L|_Z after imposing order gamma at x, the
// largest admissible order eta'(s, def), and the final deficit ratio
// f(eta, def) and g(def) = f(eta'(0.11, def), def).

#include <optional>
#include <string>
#include <vector>

#include "fujita/expr/certify.hpp"
#include "fujita/expr/polynomial.hpp"

namespace fujita::volume {

inline const Rational& default_sigma() {
    static const Rational s(59999, 10000);
    return s;
}

/// Parameters of the volume estimate: s is the coefficient of S in the
/// different, def the deficit of G at x.
struct VolParams {
    Enclosure s{0};
    Enclosure def{Rational(5, 3)};
    Rational sigma = default_sigma();
};

// ---------------------------------------------------------------------------
// h(t, r)

/// The four pieces of the lower bound for h(t, r), from t >= 4r down to
/// 0 <= t <= 4r/3. Pieces are closed; neighbours share a breakpoint.
inline std::vector<Piece> h_lower_pieces(const Expr& t, const Expr& r) {
    Rational four_thirds(4, 3);
    return {
        Piece{{t - 4 * r}, 4 * t * r - 8 * pow(r, 2)},
        Piece{{t - 2 * r, 4 * r - t}, 8 * pow(r, 2) - pow(t - 4 * r, 2)},
        Piece{{t - Expr(four_thirds) * r, 2 * r - t}, 4 * pow(r, 2) - 3 * pow(t - 2 * r, 2)},
        Piece{{t, Expr(four_thirds) * r - t}, Expr(Rational(3, 2)) * pow(t, 2)},
    };
}

/// Four-piece lower bound for the leading coefficient h(t, r); at a shared
/// breakpoint evaluation returns the hull of both sides.
inline Expr h_lower_expr(const Expr& t, const Expr& r) { return piecewise(h_lower_pieces(t, r)); }

/// Values of the two neighbouring pieces at each breakpoint 4r, 2r, 4r/3.
struct Breakpoint {
    Rational t, left, right; // left: the piece below t, right: the piece above
    bool continuous() const { return left == right; }
};

inline std::vector<Breakpoint> h_breakpoints(const Rational& r) {
    if (r.sign() <= 0) throw DomainError("h(t, r) breakpoints need r > 0");
    auto pieces = h_lower_pieces(var("t"), var("r"));
    std::vector<Breakpoint> out;
    const Rational ts[] = {Rational(4) * r, Rational(2) * r, Rational(4, 3) * r};
    for (std::size_t i = 0; i < 3; ++i) {
        Env at{{"t", Enclosure(ts[i])}, {"r", Enclosure(r)}};
        Enclosure above = eval(pieces[i].value, at), below = eval(pieces[i + 1].value, at);
        if (!above.is_point() || !below.is_point()) throw IntegrityError("h pieces must evaluate exactly at rationals");
        out.push_back({ts[i], below.lo(), above.lo()});
    }
    return out;
}

inline Enclosure h_lower(const Enclosure& t, const Enclosure& r) {
    if (t.lo().sign() < 0 || r.lo().sign() < 0)
        throw DomainError("h(t, r) needs t, r >= 0, got t = " + t.str() + ", r = " + r.str());
    static const Expr h = h_lower_expr(var("t"), var("r"));
    return eval(h, {{"t", t}, {"r", r}});
}

/// m' r (t - a r)^(n-2) / (n-2)!, valid whenever t >= a r.
inline Enclosure h_cartier_lower(const Enclosure& t, const Enclosure& r, const Enclosure& a, int m_prime, int n) {
    if (m_prime < 1) throw DomainError("multiplicity m' must be >= 1");
    if (n < 2) throw DomainError("dimension n must be >= 2");
    if (r.lo().sign() < 0) throw DomainError("r must be >= 0");
    Enclosure gap = t - a * r;
    if (gap.lo().sign() < 0)
        throw DomainError("the Cartier length bound needs t >= a r; t - a r = " + gap.str() + " is not certified >= 0");
    Rational fact(1);
    for (int i = 2; i <= n - 2; ++i) fact *= Rational(i);
    return Enclosure(Rational(m_prime)) * r * pow(gap, n - 2) / Enclosure(fact);
}

// ---------------------------------------------------------------------------
// Vol(gamma) lower bound

/// (0.9999 + def)^3 - 3 gamma^3 + 4 (1-s)^2 (gamma - def)
///   - ((gamma - 2(1-s))^3 - (def - 2(1-s))^3)
inline Expr vol_lower_expr(const Expr& gamma, const Expr& s, const Expr& def) {
    Expr w = 1 - s;
    return pow(constant("0.9999") + def, 3) - 3 * pow(gamma, 3) + 4 * pow(w, 2) * (gamma - def) -
           (pow(gamma - 2 * w, 3) - pow(def - 2 * w, 3));
}

inline const Expr& vol_lower_formula() {
    static const Expr e = vol_lower_expr(var("gamma"), var("s"), var("def"));
    return e;
}

inline Enclosure vol_lower(const Enclosure& gamma, const VolParams& p) {
    if (gamma.hi() < p.def.lo())
        throw DomainError("volume bound needs gamma >= def, got gamma = " + gamma.str() + ", def = " + p.def.str());
    return eval(vol_lower_formula(), {{"gamma", gamma}, {"s", p.s}, {"def", p.def}});
}

// ---------------------------------------------------------------------------
// eta'

struct EtaPrimeResult {
    Enclosure eta;
    bool monotone = false;   // Vol bound certified decreasing in gamma on the search range
    Rational range_lo, range_hi;
    Enclosure vol_at_lo, vol_at_hi;
};

/// Largest gamma in [def, 4(1-s)] with Vol bound >= 0, for every (s, def) in
/// the given enclosures: at `eta.lo` the bound is certainly > 0 and at
/// `eta.hi` certainly < 0. For point parameters the width is <= eps.
inline EtaPrimeResult eta_prime_detailed(const Enclosure& s, const Enclosure& def, const Rational& eps) {
    if (eps.sign() <= 0) throw DomainError("eps must be positive");
    if (s.hi() >= Rational(1)) throw DomainError("eta' needs s < 1");
    Evaluator ev;
    const Expr& vol = vol_lower_formula();
    auto at = [&](const Rational& g) { return ev.eval(vol, {{"gamma", Enclosure(g)}, {"s", s}, {"def", def}}); };

    EtaPrimeResult res;
    res.range_lo = def.hi();
    res.range_hi = Rational(4) * (Rational(1) - s.lo());
    if (res.range_hi < res.range_lo)
        throw DomainError("empty search range [def, 4(1-s)] for eta'");
    res.vol_at_lo = at(res.range_lo);
    res.vol_at_hi = at(res.range_hi);
    auto positive = [&](const Rational& g) { return at(g).lo().sign() > 0; };
    auto negative = [&](const Rational& g) { return at(g).hi().sign() < 0; };
    if (!positive(res.range_lo) || !negative(res.range_hi))
        throw DomainError("no certified sign change of the volume bound on [" + res.range_lo.str() + ", " +
                          res.range_hi.str() + "]: values " + res.vol_at_lo.str() + " and " + res.vol_at_hi.str());

    Box box;
    box.set("gamma", Enclosure(def.lo(), res.range_hi)).set("s", s).set("def", def);
    CertifyOptions copts;
    copts.budget = 4000;
    res.monotone = certify_monotone(vol, box, "gamma", Direction::Decreasing, copts).certified();

    // Bracket [a, b] with a certainly positive, b not certainly positive.
    Rational a = res.range_lo, b = res.range_hi;
    if (!res.monotone) {
        // Several roots possible: scan leftwards from 4(1-s) for the first
        // grid point where the bound is positive again.
        const int steps = 256;
        Rational h = (res.range_hi - res.range_lo) / Rational(steps);
        for (int i = steps - 1; i >= 0; --i) {
            Rational g = res.range_lo + h * Rational(i);
            if (positive(g)) {
                a = g;
                b = g + h;
                break;
            }
        }
    }
    Rational half = eps / Rational(2);
    Rational lo_a = a, lo_b = b;
    while (lo_b - lo_a > half) {
        Rational mid = (lo_a + lo_b) / Rational(2);
        (positive(mid) ? lo_a : lo_b) = mid;
    }
    // Bracket [c, d] with c not certainly negative, d certainly negative.
    Rational hi_c = a, hi_d = res.range_hi;
    while (hi_d - hi_c > half) {
        Rational mid = (hi_c + hi_d) / Rational(2);
        (negative(mid) ? hi_d : hi_c) = mid;
    }
    res.eta = Enclosure(lo_a, max(hi_d, lo_a));
    return res;
}

inline Enclosure eta_prime(const Enclosure& s, const Enclosure& def, const Rational& eps) {
    return eta_prime_detailed(s, def, eps).eta;
}

// ---------------------------------------------------------------------------
// f and g

/// sigma eta / ((sigma - 5 + def)(2(eta - def) + 1))
inline Expr f_eta_expr(const Expr& eta, const Expr& def, const Expr& sigma) {
    return sigma * eta / ((sigma - 5 + def) * (2 * (eta - def) + 1));
}

inline Enclosure f_eta(const Enclosure& eta, const Enclosure& def, const Rational& sigma) {
    Enclosure d1 = Enclosure(sigma - Rational(5)) + def;
    Enclosure d2 = Enclosure(2) * (eta - def) + Enclosure(1);
    if (d1.lo().sign() <= 0 || d2.lo().sign() <= 0)
        throw DomainError("f(eta, def) denominators not certified positive: " + d1.str() + ", " + d2.str());
    return Enclosure(sigma) * eta / (d1 * d2);
}

/// The value of s at which eta' is evaluated in g.
inline Rational g_s() { return Rational(11, 100); }

/// g(def) = f(eta'(0.11, def), def) as an enclosure valid for every def in
/// the given enclosure.
inline Enclosure g_value(const Enclosure& def, const Rational& eps, const Rational& sigma = default_sigma()) {
    Enclosure eta = eta_prime(Enclosure(g_s()), def, eps);
    return f_eta(eta, def, sigma);
}

/// Certify sup of g over [lo, hi] is below c by bisection in def.
inline Certificate certify_g_below(const Rational& lo, const Rational& hi, const Rational& c, bool strict,
                                   const Rational& eps, std::int64_t budget = 2000,
                                   const Rational& sigma = default_sigma()) {
    Certificate cert;
    auto ok = [&](const Rational& v) { return strict ? v < c : v <= c; };
    std::vector<Enclosure> stack{Enclosure(lo, hi)};
    std::optional<Rational> worst;
    while (!stack.empty()) {
        Enclosure d = stack.back();
        stack.pop_back();
        ++cert.leaves;
        // point probe: refutes when g at the midpoint is certainly beyond c
        Rational mid = d.midpoint();
        Enclosure gm = g_value(Enclosure(mid), eps, sigma);
        if (!cert.lower || gm.lo() > *cert.lower) {
            cert.lower = gm.lo();
            cert.witness = {{"def", mid}};
        }
        if (strict ? gm.lo() >= c : gm.lo() > c) {
            cert.verdict = Verdict::Refuted;
            cert.message = "g(" + mid.str() + ") >= " + gm.lo().str();
            return cert;
        }
        Enclosure g = g_value(d, eps, sigma);
        if (ok(g.hi())) {
            if (!worst || g.hi() > *worst) worst = g.hi();
            continue;
        }
        if (cert.leaves + 2 > budget || d.is_point()) {
            cert.verdict = Verdict::Inconclusive;
            cert.open_box = Env{{"def", d}};
            cert.upper = g.hi();
            cert.message = "budget exhausted";
            return cert;
        }
        stack.push_back(Enclosure(d.midpoint(), d.hi()));
        stack.push_back(Enclosure(d.lo(), d.midpoint()));
    }
    cert.verdict = Verdict::Certified;
    cert.upper = worst;
    return cert;
}

/// Best-effort monotonicity check of g: on a grid of n + 1 points the upper
/// bound at each point lies below the lower bound at the next one.
struct GridMonotonicity {
    bool increasing = true;
    std::vector<Rational> grid;
    std::vector<Enclosure> values;
};

inline GridMonotonicity g_increasing_on_grid(const Rational& lo, const Rational& hi, int n, const Rational& eps) {
    GridMonotonicity r;
    for (int i = 0; i <= n; ++i) {
        Rational x = lo + (hi - lo) * Rational(i, n);
        r.grid.push_back(x);
        r.values.push_back(g_value(Enclosure(x), eps));
        if (i > 0 && !(r.values[i - 1].hi() < r.values[i].lo())) r.increasing = false;
    }
    return r;
}

// ---------------------------------------------------------------------------
// The three regime inequalities behind h(t, 1)

struct LengthdivCase {
    std::string name;
    std::string inequality;
    Rational lo;
    std::optional<Rational> hi; // nullopt: unbounded above
    Polynomial difference;      // left side minus right side, in t
    NonnegativityCertificate exact;
    Certificate engine;         // interval subdivision on the (bounded part of the) regime
    bool bookkeeping = false;   // the x/y count reproduces the right-hand side exactly
    bool holds() const { return exact.holds && engine.certified() && bookkeeping; }
};

/// Replays the case analysis of the length bound for r = 1. In each regime
/// the larger candidate (from x >= 1 resp. x >= 2 resp. x = 3) dominates the
/// bound coming from the minimal x, so the minimum is the displayed piece.
inline std::vector<LengthdivCase> verify_lengthdiv_cases(const CertifyOptions& opts = {}) {
    Expr t = var("t");
    Polynomial pt = Polynomial::identity();
    auto P = [](std::vector<Rational> c) { return Polynomial(std::move(c)); };
    // LT(x d^2/2 + y d - y^2/2) with k = 1, d = t
    auto lt = [&](long x, const Polynomial& y) {
        return Polynomial::constant(Rational(x, 2)) * pt * pt + y * pt - Polynomial::constant(Rational(1, 2)) * y * y;
    };
    struct Spec {
        const char* name;
        const char* text;
        Expr lhs, rhs;
        Rational lo;
        std::optional<Rational> hi;
        Rational engine_hi;
        long x;
        Polynomial y;
    };
    std::vector<Spec> specs = {
        {"t>=4", "t^2/2 >= 4t - 8", pow(t, 2) / 2, 4 * t - 8, Rational(4), std::nullopt, Rational(100), 0,
         P({Rational(4)})},
        {"2<=t<=4", "t^2 >= 8 - (t-4)^2", pow(t, 2), 8 - pow(t - 4, 2), Rational(2), Rational(4), Rational(4), 1,
         P({Rational(4), Rational(-1)})},
        {"4/3<=t<=2", "(3/2) t^2 >= 4 - 3(t-2)^2", Expr(Rational(3, 2)) * pow(t, 2), 4 - 3 * pow(t - 2, 2),
         Rational(4, 3), Rational(2), Rational(2), 2, P({Rational(4), Rational(-2)})},
    };
    std::vector<LengthdivCase> out;
    for (const auto& s : specs) {
        LengthdivCase c;
        c.name = s.name;
        c.inequality = s.text;
        c.lo = s.lo;
        c.hi = s.hi;
        Expr diff = s.lhs - s.rhs;
        c.difference = to_polynomial(diff, "t");
        c.exact = certify_nonnegative(c.difference, s.lo, s.hi);
        Box box;
        box.set("t", s.lo, s.engine_hi);
        c.engine = certify_inf_above(diff, box, Rational(0), false, opts);
        c.bookkeeping = lt(s.x, s.y) == to_polynomial(s.rhs, "t");
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace fujita::volume
