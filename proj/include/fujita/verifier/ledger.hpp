#pragma once

// The claim ledger: every numeric inequality of the case analysis of the
// main argument, one claim per displayed inequality.
//
// Groups:
//   1 curve centers                     6 divisor centers, multiplicity 2
//   2 surface centers                   7 3-fold centers, multiplicity >= 4
//   3 smooth 3-fold centers             8 3-fold centers, multiplicity 2
//   4 smooth divisor centers            9 3-fold centers, multiplicity 3
//   5 divisor centers, multiplicity >= 3
//
// Conventions. sigma = 5.9999 throughout. Quantities defined only through an
// inequality (mu(w), eta') enter as enclosures computed by their defining
// operations, never as printed decimals. Where a bound is monotone in the
// deficit, the deficit is set to its case bound beta and the case hypothesis
// beta >= 2 (resp. <= 2) becomes a constraint on the remaining parameters.
// Unbounded q is handled through u = 1/q and rho = lambda q.
// Thresholds that are not rational (6/m^(1/d)) are moved into the expression:
// "lhs < rhs" is certified as "lhs - rhs < 0".

#include <string>
#include <vector>

#include "fujita/bounds/bounds.hpp"
#include "fujita/verifier/claim.hpp"
#include "fujita/volume/volume.hpp"

namespace fujita::verify {

struct LedgerOptions {
    Rational sigma{59999, 10000};
    Rational eps{1, 1000000000000LL}; // width target for the mu and eta' enclosures
};

namespace detail {

inline Expr dec(std::string_view d) { return constant(d); }

// 6 / m^(1/d), kept exact when m = 1.
inline Expr six_over_root(long m, long d) {
    if (m == 1) return Expr(6);
    return Expr(6) / root(Expr(Rational(m)), d);
}

inline Expr min_of(std::vector<Expr> xs) {
    Expr r = xs.at(0);
    for (std::size_t i = 1; i < xs.size(); ++i) r = min(r, xs[i]);
    return r;
}

class Builder {
public:
    explicit Builder(int group) : group_(group) {}

    Claim& add(std::string id, std::string title, Expr e, Box box, std::string rel, Rational threshold,
               std::string anchor, std::string note = {}) {
        Claim c;
        c.id = std::move(id);
        c.group = group_;
        c.title = std::move(title);
        c.expr = std::move(e);
        c.box = std::move(box);
        c.threshold = std::move(threshold);
        if (rel == "<" || rel == "<=") c.sense = Sense::Upper;
        else if (rel == ">" || rel == ">=") c.sense = Sense::Lower;
        else throw IntegrityError("bad relation " + rel);
        c.strict = rel.size() == 1;
        c.anchor = std::move(anchor);
        c.note = std::move(note);
        out_.push_back(std::move(c));
        return out_.back();
    }

    // Variable-free claim: a displayed numeric comparison.
    Claim& constant(std::string id, std::string title, Expr e, std::string rel, Rational threshold,
                    std::string anchor, std::string note = {}) {
        return add(std::move(id), std::move(title), std::move(e), Box(), std::move(rel), std::move(threshold),
                   std::move(anchor), std::move(note));
    }

    std::vector<Claim> take() { return std::move(out_); }

private:
    int group_;
    std::vector<Claim> out_;
};

inline Rational r(std::string_view d) { return Rational::parse(d); }

inline void append(std::vector<Claim>& to, std::vector<Claim> from) {
    for (auto& c : from) to.push_back(std::move(c));
}

/// sigma beta / (sigma - 5 + beta)
inline Expr main_lemma(const Expr& S, const Expr& beta) { return S * beta / (S - 5 + beta); }

/// beta' / ((sigma - 5 + beta)/sigma - m^(1/d) (beta - beta')/den)
inline Expr cut_bound(const Expr& S, const Expr& beta, const Expr& beta1, long m, long d, const Expr& den) {
    return beta1 / ((S - 5 + beta) / S - root(Expr(Rational(m)), d) * (beta - beta1) / den);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Groups 1-5: the easy cases

inline std::vector<Claim> easy_case_claims(const LedgerOptions& o) {
    using namespace detail;
    const Expr S(o.sigma);
    std::vector<Claim> all;

    {
        Builder b(1);
        b.constant("S6.1-curve", "curve center: deficit 1 through the basic deficit bound", main_lemma(S, 1), "<", 6,
                   "σ/(σ-5+1) < 6");
        append(all, b.take());
    }
    {
        Builder b(2);
        b.constant("S6.1-surface-m1", "smooth surface center", main_lemma(S, 2) - min(six_over_root(1, 2), Expr(6)),
                   "<", 0, "2σ/(σ-5+2) < min{6/√1, 6}");
        b.constant("S6.1-surface-m2", "surface center of multiplicity 2",
                   main_lemma(S, 1) - min(six_over_root(2, 2), Expr(6)), "<", 0, "σ/(σ-5+1) < min{6/√2, 6}");
        b.constant("S6.1-surface-m3", "surface center of multiplicity 3",
                   main_lemma(S, 1) - min(six_over_root(3, 2), Expr(6)), "<", 0, "σ/(σ-5+1) < min{6/√3, 6}");
        b.constant("S6.1-surface-m4", "surface center of multiplicity 4, mld at most 1/2",
                   main_lemma(S, Expr(Rational(1, 2))), "<", r("2.1"), "(σ/2)/(σ-5+1/2) < 2.1");
        b.constant("S6.1-surface-m4-chain", "surface center of multiplicity 4: target",
                   dec("2.1") - min(six_over_root(4, 2), Expr(6)), "<", 0, "2.1 < min{6/√4, 6}");
        append(all, b.take());
    }
    {
        Builder b(3);
        b.constant("S6.1-3fold-curve", "smooth 3-fold center, new center a curve", main_lemma(S, 1), "<", 6,
                   "σ/(σ-5+1) < 6");
        b.constant("S6.1-3fold-surface-m1", "smooth 3-fold center, new center a smooth surface (beta = 2)",
                   main_lemma(S, 2) - min(six_over_root(1, 2), Expr(6)), "<", 0,
                   "σβ/(σ-5+β) < min{6/√m₁, 6}, m₁ = 1, β = 2");
        b.constant("S6.1-3fold-surface-m2", "smooth 3-fold center, new center a double-point surface (beta = 1)",
                   main_lemma(S, 1) - min(six_over_root(2, 2), Expr(6)), "<", 0,
                   "σβ/(σ-5+β) < min{6/√m₁, 6}, m₁ = 2, β = 1");
        append(all, b.take());
    }
    {
        Builder b(4);
        b.constant("S6.1-divisor-beta3", "smooth divisor center, beta = 3", main_lemma(S, 3), "<=", r("4.6"),
                   "σβ/(σ-5+β) ≤ 4.6, β = 3");
        b.constant("S6.1-divisor-beta2", "smooth divisor center, beta = 2", main_lemma(S, 2), "<=", r("4.1"),
                   "σβ/(σ-5+β) ≤ 4.1, β = 2");
        b.constant("S6.1-divisor-beta1", "smooth divisor center, beta = 1", main_lemma(S, 1), "<=", r("3.1"),
                   "σβ/(σ-5+β) ≤ 3.1, β = 1");
        b.constant("S6.1-divisor-beta3-chain", "smooth divisor center: target for a smooth 3-fold",
                   dec("4.6") - min(six_over_root(1, 3), Expr(6)), "<", 0, "4.6 < min{6/∛1, 6}");
        b.constant("S6.1-divisor-beta2-chain", "smooth divisor center: target for beta = 2",
                   dec("4.1") - min_of({six_over_root(2, 3), six_over_root(1, 2), Expr(6)}), "<", 0,
                   "4.1 < min{6/∛2, 6/√1, 6}");
        b.constant("S6.1-divisor-beta1-chain", "smooth divisor center: target for beta = 1",
                   dec("3.1") - min_of({six_over_root(3, 3), six_over_root(2, 2), six_over_root(3, 2), Expr(6)}), "<",
                   0, "3.1 < min{6/∛3, 6/√2, 6/√3, 6}");
        {
            Box box;
            box.set("beta", 0, 1);
            b.add("S6.1-divisor-Z2-m2", "Z1 smooth 3-fold, Z2 a double-point surface, beta2 in [0, 1]",
                  main_lemma(S, var("beta")), box, "<", r("3.1"), "σβ_{G₂}/(σ-5+β_{G₂}) < 3.1, β_{G₂} ≤ 1");
        }
        b.constant("S6.1-divisor-Z2-m2-chain", "Z2 of multiplicity 2: target", dec("3.1") - six_over_root(2, 2), "<",
                   0, "3.1 < 6/√2");
        {
            Box box;
            box.set("beta", 0, Rational(2, 3));
            b.add("S6.1-divisor-Z2-m3", "Z1 a double-point 3-fold, Z2 a triple-point surface, beta2 in [0, 2/3]",
                  cut_bound(S, Expr(2), var("beta"), 2, 3, Expr(6)), box, "<", r("3.1"),
                  "(2/3)/((σ-5+2)/σ - ∛2(2-2/3)/6) < 3.1", "the display divides by 6 where the general form has σ; kept as displayed");
        }
        b.constant("S6.1-divisor-Z2-m3-chain", "Z2 of multiplicity 3: target", dec("3.1") - six_over_root(3, 2), "<",
                   0, "3.1 < 6/√3");
        b.constant("S6.1-divisor-Z1-m3-chain", "Z1 a triple-point 3-fold: target", dec("3.1") - six_over_root(3, 2),
                   "<", 0, "def(G₂)/(1-λ₂) < def(G₁)/(1-λ₁) < 3.1 < 6/√3");
        append(all, b.take());
    }
    {
        Builder b(5);
        Enclosure mu2 = bounds::mu_min(2, o.sigma, 5, o.eps);
        Enclosure mu1 = bounds::mu_min(1, o.sigma, 5, o.eps);
        Box b2, b1;
        b2.set("mu", mu2);
        b1.set("mu", mu1);
        Expr mu = var("mu");
        b.add("S6.1-mu2", "mu(2) from the optimal-mu equation", mu, b2, "<", r("0.0044"), "μ(2) < 0.0044");
        b.add("S6.1-mu1", "mu(1) from the optimal-mu equation", mu, b1, "<", r("0.0002"), "μ(1) < 0.0002");
        b.add("S6.1-divisor-m3", "divisor center of multiplicity 3, w = 2", (2 + mu * S) / (1 + mu), b2, "<",
              r("2.1"), "((5-m)+μ(w)σ)/(1+μ(w)) < 2.1, m = 3, w = 2");
        b.add("S6.1-divisor-m4", "divisor center of multiplicity 4, w = 1", (1 + mu * S) / (1 + mu), b1, "<",
              r("2.1"), "((5-m)+μ(w)σ)/(1+μ(w)) < 2.1, m = 4, w = 1");
        b.constant("S6.1-divisor-m34-chain", "divisor center of multiplicity >= 3: target",
                   dec("2.1") - min_of({six_over_root(4, 2), six_over_root(6, 3), six_over_root(4, 4)}), "<", 0,
                   "2.1 < min{6/√4, 6/∛6, 6/⁴√4}");
        append(all, b.take());
    }
    return all;
}

// ---------------------------------------------------------------------------
// Group 6: divisor center of multiplicity 2

inline std::vector<Claim> divisor_m2_claims(const LedgerOptions& o) {
    using namespace detail;
    const Expr S(o.sigma);
    const Expr a = root(Expr(2), 4); // m^(1/d) for m = 2, d = 4
    const Rational c1v = Rational(3) + r("0.0391") * o.sigma;
    const Rational c2v = r("3.9999") + r("0.2884") * o.sigma;
    const Expr C1(c1v), C2(c2v);
    Builder b(6);

    Enclosure mu3 = bounds::mu_min(3, o.sigma, 5, o.eps);
    {
        Box box;
        box.set("mu", mu3);
        Expr mu = var("mu");
        b.add("S6.2-mu3", "mu(3) from the optimal-mu equation", mu, box, "<", r("0.0391"), "μ(3) < 0.0391");
        b.add("S6.2-mu3-bound", "divisor center of multiplicity 2, w = 3", (3 + mu * S) / (1 + mu), box, "<",
              r("3.12"), "(3+μ(3)σ)/(1+μ(3)) < 3.12 < 6/⁴√2");
    }
    b.constant("S6.2-mu3-chain", "multiplicity 2 divisor: target", dec("3.12") - six_over_root(2, 4), "<", 0,
               "3.12 < 6/⁴√2");
    b.constant("S6.2-smooth-Z1-chain", "smooth new center: target", dec("3.12") - min(Expr(6), six_over_root(2, 2)),
               "<", 0, "3.12 < min{6, 6/√2}");
    b.constant("S6.2-singular-target", "singular new center: the target 3",
               min(six_over_root(4, 2), six_over_root(6, 3)), ">=", 3, "3 = min{6/√4, 6/∛6}");

    // Cases 1 and 2: q > 10 through u = 1/q in [0, 1/10] and rho = lambda q.
    const Expr u = var("u"), rho = var("rho");
    auto ubox = [] {
        Box box;
        box.set("u", 0, Rational(1, 10));
        return box;
    };
    const Expr two_a_over_s = 2 * a / S;
    const Expr estofq_const_28 = 2 / (dec("0.2834") + two_a_over_s);
    const Expr r_display_10 = (S - 5 * a) / S + (10 * a - S) / S * (2 / (dec("1.0391") * 10 - C1));

    {
        // Case 1(1): the 5 - lambda q branch, 2/(1.0391 q - C1) <= lambda < 3/q.
        Box box = ubox();
        box.set("rho", 0, 3);
        box.add(VarBound{"rho", Cmp::Ge, 2 / (dec("1.0391") - C1 * u)});
        Expr rr = 1 - rho * u - (5 - rho) * a / S; // deficit at beta = 5 - lambda q
        b.add("S6.2-L61-case1a-r", "case 1(1): q > 10, def > 2, beta = 5 - lambda q; lower bound for r", rr, box, ">",
              r("0.2834"), "r(λ, def) ≥ 1-λ-(5-λq)⁴√2/σ > 0.2834");
        b.constant("S6.2-L61-case1a-r-display", "case 1(1): the evaluated lower bound for r at q = 10", r_display_10,
                   ">", r("0.2834"),
                   "(σ-5·⁴√2)/σ + (10·⁴√2-σ)/σ · 2/(1.0391·10-3.23459609) > 0.2834");
        b.constant("S6.2-L61-case1a", "case 1(1): resulting bound on the deficit ratio", estofq_const_28, "<",
                   r("2.86"), "2/(0.2834 + 2·⁴√2/σ) < 2.86",
                   "the left side is 2.942..., so the displayed 2.86 does not hold; the target 3 does")
            .expected = Verdict::Refuted;
        b.add("S6.2-L61-case1a-region", "case 1(1): the deficit ratio bound over the whole case region",
              2 / (rr + two_a_over_s), box, "<", 3, "def(G₁)/(1-λ₁) < 2/(r + 2·⁴√2/σ) < 3");
    }
    {
        // Case 1(2): the 3 - lambda(3 - 0.0391(q - sigma)) branch.
        // beta = 3 - rho (C1 u - 0.0391) >= 2 and lambda <= 2/(1.0391 q - C1).
        auto region = [&](const Expr& c1) {
            Box box = ubox();
            box.set("rho", 0, 3);
            box.add(VarBound{"rho", Cmp::Le, 2 / (dec("1.0391") - c1 * u)});
            box.add_nonpositive(rho * (C1 * u - dec("0.0391")) - 1);
            return box;
        };
        Expr beta = 3 - rho * (C1 * u - dec("0.0391"));
        Expr rr = 1 - rho * u - beta * a / S;
        b.add("S6.2-L61-case1b-r", "case 1(2): q > 10, def > 2, beta from the far phi line; lower bound for r", rr,
              region(C1), ">", r("0.2834"), "r(λ, def) ≥ 1-λ-(3-λ(3-0.0391(q-σ)))⁴√2/σ > 0.2834");
        b.add("S6.2-L61-case1b-r-printed", "case 1(2) with the alternative printed constant 3.2339961", rr,
              region(dec("3.2339961")), ">", r("0.2834"),
              "1-3·⁴√2/σ + 2((3-0.0391(q-σ))⁴√2/σ-1)/(1.0391q-3.2339961) > 0.2834",
              "same claim with lambda <= 2/(1.0391 q - 3.2339961); certifies under both readings");
        b.constant("S6.2-L61-case1b-r-display", "case 1(2): the evaluated lower bound for r at q = 10", r_display_10,
                   ">", r("0.2834"),
                   "(σ-5·⁴√2)/σ + (10·⁴√2-σ)/σ · 2/(1.0391·10-3.23459609) > 0.2834 (second branch)");
        b.constant("S6.2-L61-case1b", "case 1(2): resulting bound on the deficit ratio", estofq_const_28, "<",
                   r("2.86"), "2/(0.2834 + 2·⁴√2/σ) < 2.86 (second branch)",
                   "the left side is 2.942..., so the displayed 2.86 does not hold; the target 3 does")
            .expected = Verdict::Refuted;
        b.add("S6.2-L61-case1b-region", "case 1(2): the deficit ratio bound over the whole case region",
              2 / (rr + two_a_over_s), region(C1), "<", 3, "def(G₁)/(1-λ₁) < 2/(r + 2·⁴√2/σ) < 3 (second branch)");
    }
    {
        Box box;
        box.set("lambda", 0, Rational(3, 10));
        b.add("S6.2-L61-case2a", "case 2(1): q > 10, def <= 2, lambda <= 3/q", 2 / (1 - var("lambda")), box, "<=",
              Rational(20, 7), "2/(1-λ) ≤ 20/7");
    }
    {
        Box box = ubox();
        box.set("rho", 3, 5);
        b.add("S6.2-L61-case2b", "case 2(2): q > 10, def <= 5 - lambda q <= 2", (5 - rho) / (1 - rho * u), box,
              "<=", Rational(20, 7), "(5-λq)/(1-λ) ≤ 20/7");
        b.add("S6.2-L61-case2b-display", "case 2(2): the bound at lambda = 3/q", 2 / (1 - 3 * u), ubox(), "<=",
              Rational(20, 7), "2/(1-3/q) ≤ 20/7");
    }

    // Cases 3 and 4: sigma <= q <= 10, lambda directly.
    const Expr q = var("q"), lam = var("lambda");
    const Expr P1 = dec("1.2884") * q - C2; // 2/P1: the two lines of beta cross
    const Expr P2 = C2 - dec("0.2884") * q; // 1/P2: the near line reaches 2
    const Rational k_cross = r("1.8652");   // q >= 3 C2 / 1.8652  <=>  2/P1 <= 1/P2
    auto qbox = [&] {
        Box box;
        box.set("q", o.sigma, 10).set("lambda", 0, 1);
        return box;
    };
    auto beyond_cross = [&](Box box, bool above) {
        box.add(LinearConstraint{{{"q", k_cross}}, above ? Cmp::Ge : Cmp::Le, 3 * c2v});
        return box;
    };
    auto lam_ge = [](Box box, Expr e) {
        box.add(VarBound{"lambda", Cmp::Ge, std::move(e)});
        return box;
    };
    auto lam_le = [](Box box, Expr e) {
        box.add(VarBound{"lambda", Cmp::Le, std::move(e)});
        return box;
    };
    const Expr estofq_const_27 = 2 / (dec("0.2779") + two_a_over_s);
    const Expr r_display_92 = (S - 5 * a) / S + (dec("9.2") * a - S) / S * (2 / (dec("1.2884") * dec("9.2") - C2));

    {
        Box box = lam_le(lam_ge(qbox(), 2 / P1), 3 / q);
        Expr rr = 1 - lam - (5 - lam * q) * a / S;
        b.add("S6.2-L61-case3a-q", "case 3(1): q <= 10, def > 2, beta = 5 - lambda q; the region forces q > 9.2", q,
              box, ">", r("9.2"), "3/q > λ ≥ 2/(1.2884q-5.73027116) ⟹ q > 9.2");
        b.add("S6.2-L61-case3a-r", "case 3(1): lower bound for r", rr, box, ">", r("0.2779"),
              "r(λ, def) ≥ 1-λ-(5-λq)⁴√2/σ > 0.2779");
        b.constant("S6.2-L61-case3a-r-display", "case 3(1): the evaluated lower bound for r at q = 9.2", r_display_92,
                   ">", r("0.2779"), "(σ-5·⁴√2)/σ + (9.2·⁴√2-σ)/σ · 2/(1.2884·9.2-5.73027116) > 0.2779");
        b.constant("S6.2-L61-case3a", "case 3(1): resulting bound on the deficit ratio", estofq_const_27, "<",
                   r("2.97"), "2/(0.2779 + 2·⁴√2/σ) < 2.97");
        b.add("S6.2-L61-case3a-region", "case 3(1): the deficit ratio bound over the whole case region",
              2 / (rr + two_a_over_s), box, "<", r("2.97"), "def(G₁)/(1-λ₁) < 2/(r + 2·⁴√2/σ) < 2.97");
    }
    {
        // Case 3(2)(1): beta = 3 - lambda P2 > 2, lambda <= 2/P1 < 1/P2.
        Box box = lam_le(lam_le(beyond_cross(qbox(), true), 2 / P1), 1 / P2);
        Expr rr = 1 - lam - (3 - lam * P2) * a / S;
        b.add("S6.2-L61-case3b1-q", "case 3(2)(1): 2/P1 < 1/P2 forces q > 9.2", q, box, ">", r("9.2"),
              "2/(1.2884q-5.73027116) < 1/(5.73027116-0.2884q) ⟹ q > 9.2");
        b.add("S6.2-L61-case3b1-r", "case 3(2)(1): lower bound for r", rr, box, ">", r("0.2779"),
              "r(λ, def) ≥ 1-3·⁴√2/σ + 2((3.9999-0.2884(q-σ))⁴√2/σ-1)/(1.2884q-5.73027116) > 0.2779");
        b.constant("S6.2-L61-case3b1-r-display", "case 3(2)(1): the evaluated lower bound for r at q = 9.2",
                   (S - 5 * a) / S + (2 / S) * ((dec("9.2") * a - S) / (dec("1.2884") * dec("9.2") - C2)), ">",
                   r("0.2779"), "(σ-5·⁴√2)/σ + (2/σ)·(9.2·⁴√2-σ)/(1.2884·9.2-5.73027116) > 0.2779");
        b.constant("S6.2-L61-case3b1", "case 3(2)(1): resulting bound on the deficit ratio", estofq_const_27, "<",
                   r("2.97"), "2/(0.2779 + 2·⁴√2/σ) < 2.97 (near-line branch)");
        b.add("S6.2-L61-case3b1-region", "case 3(2)(1): the deficit ratio bound over the whole case region",
              2 / (rr + two_a_over_s), box, "<", r("2.97"),
              "def(G₁)/(1-λ₁) < 2/(r + 2·⁴√2/σ) < 2.97 (near-line branch, q > 9.2)");
    }
    {
        // Case 3(2)(2): lambda <= 1/P2 <= 2/P1.
        Box box = lam_le(beyond_cross(qbox(), false), 1 / P2);
        Expr rr = 1 - lam - (3 - lam * P2) * a / S;
        Expr displayed = 1 - 2 * a / S + 1 / (dec("0.2884") * dec("9.22") - C2);
        b.add("S6.2-L61-case3b2-q", "case 3(2)(2): 2/P1 >= 1/P2 forces q < 9.22", q, box, "<", r("9.22"),
              "2/(1.2884q-5.73027116) ≥ 1/(5.73027116-0.2884q) ⟹ q < 9.22");
        b.add("S6.2-L61-case3b2-r", "case 3(2)(2): lower bound for r", rr - displayed, box, ">", 0,
              "r(λ, def) > 1-2·⁴√2/σ + 1/(0.2884·9.22-5.73027116)");
        b.constant("S6.2-L61-case3b2", "case 3(2)(2): resulting bound on the deficit ratio",
                   2 / (1 + 1 / (dec("0.2884") * dec("9.22") - C2)), "<", r("2.97"),
                   "2/(1 + 1/(0.2884·9.22-5.73027116)) < 2.97");
        b.add("S6.2-L61-case3b2-region", "case 3(2)(2): the deficit ratio bound over the whole case region",
              2 / (rr + two_a_over_s), box, "<", r("2.97"),
              "def(G₁)/(1-λ₁) < 2/(r + 2·⁴√2/σ) < 2.97 (near-line branch, q < 9.22)");
    }

    // Case 4: def <= 2; the ratio bound is def/(1 - lambda) with def at the
    // binding term of min{2, 5 - lambda q, 3 - lambda P2}.
    const Expr two_over = 2 / (1 - lam);
    const Expr five_over = (5 - lam * q) / (1 - lam);
    const Expr near_over = (3 - lam * P2) / (1 - lam);
    const Expr display_92 = 2 * dec("9.2") / (dec("9.2") - 3);
    {
        Box box = lam_le(lam_ge(qbox(), 2 / P1), 3 / q);
        b.add("S6.2-L61-case4i-q", "case 4(1): 2 <= 5 - lambda q <= near line forces q > 9.2", q, box, ">", r("9.2"),
              "3/q ≥ λ ≥ 2/(1.2884q-5.73027116) ⟹ q > 9.2 (def ≤ 2)");
        b.add("S6.2-L61-case4i", "case 4(1): 2/(1 - lambda) over the case region", two_over, box, "<", r("2.97"),
              "def/(1-λ) ≤ 2/(1-λ) ≤ 2q/(q-3) < 2.97");
        b.constant("S6.2-L61-case4i-display", "case 4(1): the bound at q = 9.2", display_92, "<", r("2.97"),
                   "2·9.2/(9.2-3) < 2.97");
    }
    {
        Box box = lam_le(lam_le(beyond_cross(qbox(), true), 2 / P1), 1 / P2);
        b.add("S6.2-L61-case4ii1-q", "case 4(2)(1): 2/P1 < 1/P2 forces q > 9.2", q, box, ">", r("9.2"),
              "2/(1.2884q-5.73027116) < 1/(5.73027116-0.2884q) ⟹ q > 9.2 (def ≤ 2)");
        b.add("S6.2-L61-case4ii1", "case 4(2)(1): 2/(1 - lambda) over the case region", two_over, box, "<",
              r("2.98"), "2/(1-λ) ≤ 2/(1-2/(1.2884q-5.73027116)) < 2.98");
        b.constant("S6.2-L61-case4ii1-display", "case 4(2)(1): the bound at q = 9.2",
                   2 / (1 - 2 / (dec("1.2884") * dec("9.2") - C2)), "<", r("2.98"),
                   "2/(1-2/(1.2884·9.2-5.73027116)) < 2.98");
    }
    {
        Box box = lam_le(beyond_cross(qbox(), false), 1 / P2);
        b.add("S6.2-L61-case4ii2-q", "case 4(2)(2): 2/P1 >= 1/P2 forces q < 9.22", q, box, "<", r("9.22"),
              "2/(1.2884q-5.73027116) ≥ 1/(5.73027116-0.2884q) ⟹ q < 9.22 (def ≤ 2)");
        b.add("S6.2-L61-case4ii2", "case 4(2)(2): 2/(1 - lambda) over the case region", two_over, box, "<",
              r("2.97"), "2/(1-λ) ≤ 2/(1-1/(5.73027116-0.2884q)) < 2.97");
        b.constant("S6.2-L61-case4ii2-display", "case 4(2)(2): the bound at q = 9.22",
                   2 / (1 - 1 / (C2 - dec("0.2884") * dec("9.22"))), "<", r("2.97"),
                   "2/(1-1/(5.73027116-0.2884·9.22)) < 2.97");
    }
    {
        Box box = lam_le(lam_ge(qbox(), 3 / q), 1 / P2);
        b.add("S6.2-L61-case4iii-q", "case 4(3): 3/q <= lambda <= 1/P2 forces q > 9.2", q, box, ">", r("9.2"),
              "3/q ≤ λ ≤ 1/(5.73027116-0.2884q) ⟹ q > 9.2");
        b.add("S6.2-L61-case4iii", "case 4(3): (5 - lambda q)/(1 - lambda) over the case region", five_over, box,
              "<", r("2.97"), "(5-λq)/(1-λ) ≤ 2q/(q-3) < 2.97");
        b.constant("S6.2-L61-case4iii-display", "case 4(3): the bound at q = 9.2", display_92, "<", r("2.97"),
                   "2·9.2/(9.2-3) < 2.97 (case 4(3))");
    }
    {
        Box box = lam_le(lam_ge(lam_ge(qbox(), 2 / P1), 1 / P2), 5 / q);
        b.add("S6.2-L61-case4iv-q", "case 4(4): the branch 2/P1 <= 1/P2 forces q > 9.2", q,
              beyond_cross(box, true), ">", r("9.2"),
              "2/(1.2884q-5.73027116) ≤ 1/(5.73027116-0.2884q) ⟹ q > 9.2 (case 4(4))");
        b.add("S6.2-L61-case4iv", "case 4(4): (5 - lambda q)/(1 - lambda) over the case region", five_over, box,
              "<", r("2.98"), "(5-λq)/(1-λ) ≤ (5-q/(5.73027116-0.2884q))/(1-1/(5.73027116-0.2884q)) < 2.98",
              "certified over both branches of max{2/P1, 1/P2}, not only the displayed one");
        b.constant("S6.2-L61-case4iv-display", "case 4(4): the bound at q = 9.2",
                   (5 * C2 - (1 + 5 * dec("0.2884")) * dec("9.2")) / (dec("4.73027116") - dec("0.2884") * dec("9.2")),
                   "<", r("2.98"), "(5·5.73027116-(1+5·0.2884)·9.2)/(4.73027116-0.2884·9.2) < 2.98");
    }
    // def >= 0 bounds lambda by 3/P2 where the near line is binding.
    {
        Box box = lam_le(lam_le(lam_ge(qbox(), 1 / P2), 3 / q), 3 / P2);
        b.add("S6.2-L61-case4v-q", "case 4(5): 1/P2 <= lambda <= 3/q forces q < 9.22", q, box, "<", r("9.22"),
              "1/(5.73027116-0.2884q) ≤ λ ≤ 3/q ⟹ q < 9.22");
        b.add("S6.2-L61-case4v", "case 4(5): (3 - lambda P2)/(1 - lambda) over the case region", near_over, box, "<",
              r("2.97"), "(3-λ(5.7278712-0.288q))/(1-λ) ≤ 2/(1-1/(5.73027116-0.2884q)) < 2.97",
              "certified with the near line 3.9999 - 0.2884(q - sigma); the display prints 5.7278712 - 0.288q");
        b.constant("S6.2-L61-case4v-display", "case 4(5): the displayed bound at q = 9.2",
                   2 / (1 - 1 / (C2 - dec("0.2884") * dec("9.2"))), "<", r("2.97"),
                   "2/(1-1/(5.73027116-0.2884·9.2)) < 2.97",
                   "the bound increases with q, so evaluating at 9.2 for q < 9.22 understates it; the region claim "
                   "covers the case");
    }
    {
        Box box = lam_le(lam_le(lam_ge(qbox(), 3 / q), 2 / P1), 3 / P2);
        b.add("S6.2-L61-case4vi-q", "case 4(6): 3/q <= lambda <= 2/P1 forces q < 9.22", q, box, "<", r("9.22"),
              "3/q ≤ λ ≤ 2/(1.2884q-5.73027116) ⟹ q < 9.22");
        b.add("S6.2-L61-case4vi", "case 4(6): (3 - lambda P2)/(1 - lambda) over the case region", near_over, box, "<",
              r("2.97"), "(3-λ(3.9999-0.2884(q-σ)))/(1-λ) ≤ (3-(3/q)(5.73027116-0.2884q))/(1-3/q) < 2.97");
        b.constant("S6.2-L61-case4vi-display", "case 4(6): the bound at q = 9.22",
                   (3 * dec("9.22") - 3 * (C2 - dec("0.2884") * dec("9.22"))) / (dec("9.22") - 3), "<", r("2.97"),
                   "(3·9.22-3(5.73027116-0.2884·9.22))/(9.22-3) < 2.97");
    }
    return b.take();
}

// ---------------------------------------------------------------------------
// Groups 7-9: singular 3-fold centers

inline std::vector<Claim> threefold_claims(const LedgerOptions& o) {
    using namespace detail;
    const Expr S(o.sigma);
    std::vector<Claim> all;
    {
        Builder b(7);
        b.constant("S6.3-m4-main", "3-fold center of multiplicity >= 4, beta = 1", main_lemma(S, 1), "<", r("3.1"),
                   "σ/(σ-5+1) < 3.1");
        b.constant("S6.3-m4-chain", "3-fold center of multiplicity >= 4: target", dec("3.1") - six_over_root(6, 3),
                   "<", 0, "3.1 < 6/∛6");
        b.constant("S6.3-m4-surface-chain", "new center a surface of multiplicity <= 3: target",
                   dec("3.1") - six_over_root(3, 2), "<", 0, "def(G₁)/(1-λ₁) < 3.1 < 6/√(mult Z₁), mult Z₁ ≤ 3");
        b.constant("S6.3-m4-Z1-m4", "new center a surface of multiplicity 4",
                   cut_bound(S, Expr(1), Expr(Rational(1, 2)), 6, 3, S), "<", r("2.75"),
                   "(1/2)/((σ-5+1)/σ - ∛6(1-1/2)/σ) < 2.75");
        b.constant("S6.3-m4-Z1-m4-chain", "new center a surface of multiplicity 4: target",
                   dec("2.75") - six_over_root(4, 2), "<", 0, "2.75 < 6/√4 = 3");
        append(all, b.take());
    }
    {
        Builder b(8);
        b.constant("S6.3-m2-main", "3-fold center of multiplicity 2, beta = 2", main_lemma(S, 2), "<=", r("4.1"),
                   "2σ/(σ-5+2) ≤ 4.1");
        b.constant("S6.3-m2-chain", "3-fold center of multiplicity 2: target", dec("4.1") - six_over_root(2, 3), "<",
                   0, "4.1 < 6/∛2");
        for (long m1 = 1; m1 <= 4; ++m1) {
            Expr beta1(Rational(2, m1));
            b.constant("S6.3-m2-m1-" + std::to_string(m1),
                       "multiplicity 2, new center a surface of multiplicity " + std::to_string(m1),
                       cut_bound(S, Expr(2), beta1, 2, 3, S) - six_over_root(m1, 2), "<", 0,
                       "(2/m₁)/((σ-5+2)/σ - ∛2(2-2/m₁)/σ) < 6/√m₁, m₁ = " + std::to_string(m1));
        }
        append(all, b.take());
    }
    {
        Builder b(9);
        const Expr five_thirds(Rational(5, 3));
        b.constant("S6.3-m3-main", "3-fold center of multiplicity 3, beta = 2", main_lemma(S, 2), "<=", r("4.1"),
                   "2σ/(σ-5+2) ≤ 4.1 (multiplicity 3)");
        b.constant("S6.3-m3-chain", "3-fold center of multiplicity 3: target", dec("4.1") - six_over_root(3, 3), "<",
                   0, "4.1 < 6/∛3");
        for (long m1 = 1; m1 <= 3; ++m1) {
            Expr beta1(Rational(2, m1));
            b.constant("S6.3-m3-beta53-m1-" + std::to_string(m1),
                       "multiplicity 3, beta = 5/3, new center a surface of multiplicity " + std::to_string(m1),
                       cut_bound(S, five_thirds, beta1, 3, 3, S) - six_over_root(m1, 2), "<", 0,
                       "(2/m₁)/((σ-5+5/3)/σ - ∛3(5/3-2/m₁)/σ) < 6/√m₁, m₁ = " + std::to_string(m1));
        }
        b.constant("S6.3-m3-beta85", "hyperplane section not an ordinary triple point: beta = 8/5",
                   cut_bound(S, Expr(Rational(8, 5)), Expr(Rational(1, 2)), 3, 3, S), "<", 3,
                   "(2/4)/((σ-5+8/5)/σ - ∛3(8/5-2/4)/σ) < 3");
        b.constant("S6.3-m3-exhibit", "ordinary triple point, S of multiplicity 4: the direct bound",
                   cut_bound(S, five_thirds, Expr(Rational(1, 2)), 3, 3, S), "<", r("3.05"),
                   "(2/4)/((σ-5+5/3)/σ - ∛3(5/3-2/4)/σ) < 3.05",
                   "informational: this bound does not reach the target 3, which is why the volume argument follows");
        b.constant("S6.3-m3-exhibit-exceeds-3", "the direct bound indeed misses the target 3",
                   cut_bound(S, five_thirds, Expr(Rational(1, 2)), 3, 3, S), ">", 3,
                   "(2/4)/((σ-5+5/3)/σ - ∛3(5/3-2/4)/σ) ≥ 3 (the computation does not give < 3)");
        b.constant("S6.3-lsc-a", "def < 1.63 already gives the target: beta = 1.63",
                   cut_bound(S, dec("1.63"), Expr(Rational(1, 2)), 3, 3, S), "<", 3,
                   "(2/4)/((σ-5+1.63)/σ - ∛3(1.63-2/4)/σ) < 3");
        {
            Box box;
            box.set("def", r("1.63"), Rational(5, 3));
            b.add("S6.3-lsc-c", "bound on s from 1.63 <= def", 5 - 3 * var("def"), box, "<=", r("0.11"),
                  "s ≤ 5-3def ≤ 0.11");
        }
        {
            // lambda = kappa (5 - def)/sigma with kappa in [0, 1]
            Box box;
            box.set("def", r("1.63"), Rational(5, 3)).set("kappa", 0, 1);
            Expr lam = var("kappa") * (5 - var("def")) / S;
            b.add("S6.3-A3-lower", "lambda <= (5 - def)/sigma gives (1 - lambda) sigma >= 0.9999 + def",
                  S * (1 - lam) - var("def"), box, ">=", r("0.9999"), "A³ ≥ (0.9999+def)³ from λ ≤ (5-def)/σ",
                  "certified as sigma (1 - lambda) - def >= 0.9999, the base of the cube");
        }
        {
            Box box;
            box.set("s", 0, r("0.11"));
            b.add("S6.3-eta-threshold", "the volume argument is needed only below 4(1 - s)",
                  4 * (1 - var("s")), box, ">=", r("3.56"), "4(1-s) ≥ 3.56");
            b.add("S6.3-eta-start", "eta >= def > (4/3)(1 - s)", Expr(Rational(4, 3)) * (1 - var("s")), box, "<",
                  r("1.63"), "def ≥ 1.63 > (4/3)(1-s)");
        }
        {
            // f(eta, def) with u = 1/eta, eta >= 4(1 - s)
            Box box;
            box.set("s", 0, r("0.11")).set("def", r("1.63"), Rational(5, 3)).set("u", 0, Rational(1, 2));
            box.add(VarBound{"u", Cmp::Le, 1 / (4 * (1 - var("s")))});
            Expr def = var("def"), u = var("u");
            Expr f = S / ((S - 5 + def) * (2 + (1 - 2 * def) * u));
            b.add("S6.3-f-below-3", "f(eta, def) for eta >= 4(1 - s) >= 3.56", f, box, "<", 3,
                  "η ≥ 4(1-s) ≥ 3.56 ⟹ f(η, def) < 3",
                  "f = sigma eta/((sigma - 5 + def)(2(eta - def) + 1)) rewritten in u = 1/eta");
        }
        {
            Enclosure eta = volume::eta_prime(Enclosure(volume::g_s()), Enclosure(Rational(5, 3)), o.eps);
            Box box;
            box.set("eta", eta).set("def", Rational(5, 3), Rational(5, 3));
            Expr f = volume::f_eta_expr(var("eta"), var("def"), S);
            b.add("S6.3-g-endpoint", "g(5/3) = f(eta'(0.11, 5/3), 5/3)", f, box, "<=", r("2.98"),
                  "g(5/3) ≤ 2.98",
                  "g(5/3) = 2.9925..., so the displayed 2.98 does not hold; g < 3 does (S6.3-g-below-3)")
                .expected = Verdict::Refuted;
        }
        {
            Box box;
            box.set("def", r("1.63"), Rational(5, 3));
            Expr f = volume::f_eta_expr(var("eta"), var("def"), S);
            Rational sigma = o.sigma, eps = o.eps;
            Claim& c = b.add("S6.3-g-below-3", "g(def) = f(eta'(0.11, def), def) on [1.63, 5/3]", f, box, "<", 3,
                             "def(G')/(1-λ') ≤ g(def) < 3",
                             "eta' is recomputed on every def subinterval; the target of the final step");
            c.engine = [sigma, eps](const CertifyOptions& opts) {
                std::int64_t budget = std::min<std::int64_t>(opts.budget, 2000);
                return volume::certify_g_below(r("1.63"), Rational(5, 3), Rational(3), true, eps, budget, sigma);
            };
        }
        append(all, b.take());
    }
    return all;
}

/// The full ledger in presentation order.
inline std::vector<Claim> build_ledger(const LedgerOptions& o = {}) {
    std::vector<Claim> all = easy_case_claims(o);
    detail::append(all, divisor_m2_claims(o));
    detail::append(all, threefold_claims(o));
    return all;
}

/// Deliberately falsified variants; each must come back Refuted.
inline std::vector<Claim> negative_controls(const LedgerOptions& o = {}) {
    std::vector<Claim> out;
    auto tighten = [&](const std::vector<Claim>& from, const std::string& id, const Rational& t) {
        for (const auto& c : from) {
            if (c.id != id) continue;
            Claim n = c;
            n.id = "NC-" + id;
            n.title = "negative control: " + c.title + " with threshold " + t.decimal(4);
            n.threshold = t;
            n.expected = Verdict::Refuted;
            n.note = "tightened threshold; must be refuted";
            out.push_back(std::move(n));
            return;
        }
        throw IntegrityError("negative control source " + id + " missing from the ledger");
    };
    std::vector<Claim> easy = easy_case_claims(o), m2 = divisor_m2_claims(o);
    tighten(easy, "S6.1-curve", Rational(29, 10));
    tighten(m2, "S6.2-mu3-bound", Rational(31, 10));
    tighten(m2, "S6.2-L61-case2a", Rational(28, 10));
    return out;
}

} // namespace fujita::verify
