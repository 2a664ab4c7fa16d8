#include <gtest/gtest.h>

#include <random>

#include "fujita/expr/certify.hpp"
#include "fujita/expr/polynomial.hpp"
#include "fujita/expr/serialize.hpp"

using namespace fujita;

namespace {

const Rational kSigma = Rational::parse("5.9999");

Expr P(const char* s) { return parse_expr(s, {{"sigma", Expr(kSigma)}}); }

std::map<std::string, Rational> pt(std::initializer_list<std::pair<const std::string, Rational>> l) { return l; }

// Evenly spaced rational grid over a box, `k` points per axis.
std::vector<std::map<std::string, Rational>> grid(const Box& b, int k) {
    std::vector<std::map<std::string, Rational>> out{{}};
    for (const auto& [name, r] : b.vars()) {
        std::vector<std::map<std::string, Rational>> next;
        for (const auto& p : out) {
            for (int i = 0; i < k; ++i) {
                auto q = p;
                q[name] = r.lo() + r.width() * Rational(i, k - 1);
                next.push_back(std::move(q));
            }
        }
        out = std::move(next);
    }
    return out;
}

} // namespace

TEST(Expr, BuildersFoldConstants) {
    Expr x = var("x");
    EXPECT_TRUE((Expr(2) + Expr(3)).is_const(5));
    EXPECT_EQ((x * 1).get(), x.get());
    EXPECT_TRUE((x * 0).is_const(0));
    EXPECT_EQ((x + 0).get(), x.get());
    EXPECT_EQ(x.vars(), std::vector<std::string>{"x"});
    EXPECT_EQ((x + var("a") * x).vars(), (std::vector<std::string>{"a", "x"}));
}

TEST(Expr, ParseAndPrintRoundTrip) {
    for (const char* s : {"sigma*beta/(sigma - 5 + beta)", "2/(1 - lambda)", "-x^2 + root(x + 1, 3)*y",
                          "min(a, b) - max(a, 2*b)", "x^(-2) - (a - b) - (c + d)", "sqrt(2)/(1 - x/3)"}) {
        Expr e = P(s);
        Expr again = parse_expr(e.str());
        EXPECT_EQ(again.str(), e.str()) << s;
    }
    EXPECT_THROW(P("x + "), DomainError);
    EXPECT_THROW(P("foo(1)"), DomainError);
    EXPECT_THROW(P("x / 0"), DivisionByZero);
}

TEST(Eval, MainLemmaFormAtBetaOne) {
    Expr e = P("sigma*beta/(sigma - n + beta)");
    Enclosure v = eval_at(e, pt({{"beta", 1}, {"n", 5}}));
    EXPECT_EQ(v, Enclosure(Rational(59999, 19999)));
    EXPECT_LT(v.hi(), Rational(31, 10));
}

TEST(Eval, DependencyWidensButContainsZero) {
    Expr x = var("x");
    Enclosure v = eval(x - x, {{"x", Enclosure(0, 1)}});
    EXPECT_TRUE(v.contains(Rational(0)));
    EXPECT_EQ(v, Enclosure(-1, 1));
}

TEST(Eval, DivisorCenterForm) {
    Expr e = P("(n - m + mu*sigma)/(1 + mu)");
    Enclosure v = eval_at(e, pt({{"n", 5}, {"m", 3}, {"mu", Rational(44, 10000)}}));
    EXPECT_LT(v.hi(), Rational(21, 10));
}

TEST(Eval, ErrorsNameTheProblem) {
    EXPECT_THROW(eval(var("y"), {}), UnboundVariable);
    try {
        eval(P("1/(x - 1)"), {{"x", Enclosure(0, 2)}});
        FAIL();
    } catch (const DivisionByZero& e) {
        EXPECT_NE(std::string(e.what()).find("x - 1"), std::string::npos);
    }
    EXPECT_THROW(eval(P("sqrt(x)"), {{"x", Enclosure(-1, 1)}}), DomainError);
}

TEST(Eval, RootsRespectEps) {
    EvalOptions o;
    o.eps = Rational(1, 1000000);
    Enclosure v = eval(P("root(2, 4)"), {}, o);
    EXPECT_LE(v.width(), o.eps);
    EXPECT_LE(pow(v.lo(), 4), Rational(2));
    EXPECT_GE(pow(v.hi(), 4), Rational(2));
}

TEST(Eval, PiecewiseHullAtBoundary) {
    Expr x = var("x");
    Expr f = piecewise({{{x}, x + 1}, {{-x}, 2 * x + 3}});
    // One-sided limits at 0 are 1 and 3; a box straddling 0 must contain both.
    Enclosure v = eval(f, {{"x", Enclosure(Rational(-1, 100), Rational(1, 100))}});
    EXPECT_TRUE(v.contains(Rational(1)));
    EXPECT_TRUE(v.contains(Rational(3)));
    EXPECT_EQ(eval_at(f, pt({{"x", 0}})), Enclosure(1, 3));
    EXPECT_EQ(eval_at(f, pt({{"x", 1}})), Enclosure(2));
    Expr g = piecewise({{{x}, x}});
    EXPECT_THROW(eval_at(g, pt({{"x", -1}})), DomainError);
}

TEST(Eval, SamplingNeverExceedsEnclosure) {
    std::mt19937_64 rng(11);
    std::vector<Expr> es{P("sigma*b/(sigma - 5 + b)"), P("(3 + mu*sigma)/(1 + mu) - mu^2"),
                         P("2/(x + 1/10 - root(x + 1, 3)*y/sigma)"), P("x*y - y^3 + min(x, y)")};
    std::uniform_int_distribution<int> d(1, 30);
    for (const auto& e : es) {
        for (int trial = 0; trial < 20; ++trial) {
            Box b;
            for (const auto& v : e.vars()) {
                Rational lo(d(rng), 20);
                b.set(v, lo, lo + Rational(d(rng), 100));
            }
            Enclosure range;
            try {
                range = eval(e, b.vars());
            } catch (const MathError&) {
                continue;
            }
            for (const auto& p : grid(b, 4)) {
                Enclosure v = eval_at(e, p);
                ASSERT_LE(range.lo(), v.lo()) << e.str();
                ASSERT_GE(range.hi(), v.hi()) << e.str();
            }
        }
    }
}

TEST(Eval, SubdivisionSoundness) {
    Expr e = P("(5 - q*l)/(1 - l) + q^2*l");
    Box parent;
    parent.set("q", 6, 10).set("l", 0, Rational(3, 10));
    Enclosure whole = eval(e, parent.vars());
    auto [a, b] = parent.bisect("q");
    Enclosure ea = eval(e, a.vars()), eb = eval(e, b.vars());
    EXPECT_TRUE(whole.contains(ea));
    EXPECT_TRUE(whole.contains(eb));
    for (const auto& p : grid(parent, 5)) {
        Enclosure v = eval_at(e, p);
        EXPECT_TRUE(ea.contains(v) || eb.contains(v));
    }
}

TEST(Derivative, RulesAndUnsupportedShapes) {
    Expr x = var("x");
    EXPECT_TRUE(derivative(Expr(7), "x").is_const(0));
    EXPECT_TRUE(derivative(x, "x").is_const(1));
    EXPECT_EQ(eval_at(derivative(pow(x, 3), "x"), pt({{"x", 2}})), Enclosure(12));
    EXPECT_EQ(eval_at(derivative(1 / x, "x"), pt({{"x", 2}})), Enclosure(Rational(-1, 4)));
    EXPECT_THROW(derivative(min(x, Expr(1)), "x"), UnsupportedShape);
    EXPECT_TRUE(derivative(min(var("y"), Expr(1)), "x").is_const(0));
}

TEST(Derivative, AgreesWithCentralDifferences) {
    // Central difference error is c*h^2 + O(h^4): halving h must shrink the
    // error by about 4. Checked with exact rational arithmetic.
    std::vector<Expr> es{P("sigma*b/(sigma - 5 + b)"), P("(1 - c)*d/((1 - l) - c*d*t)"),
                         P("x^3*y - y/(x + 2) + x^(-2)"), P("(x + 1)^4/(y^2 + 1)")};
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(1, 99);
    int checks = 0;
    while (checks < 100) {
        const Expr& e = es[static_cast<std::size_t>(checks) % es.size()];
        std::map<std::string, Rational> p;
        for (const auto& v : e.vars()) p[v] = Rational(50 + d(rng), 100);
        const std::string& v = e.vars()[static_cast<std::size_t>(checks) % e.vars().size()];
        Rational exact;
        try {
            exact = eval_at(derivative(e, v), p).lo();
        } catch (const MathError&) {
            continue;
        }
        auto fd = [&](const Rational& h) {
            auto a = p, b = p;
            a[v] += h;
            b[v] -= h;
            return (eval_at(e, a).lo() - eval_at(e, b).lo()) / (Rational(2) * h);
        };
        Rational h1(1, 1000), h2(1, 2000);
        Rational e1 = abs(fd(h1) - exact), e2 = abs(fd(h2) - exact);
        ASSERT_LE(e1, Rational(1, 100)) << e.str() << " d/d" << v;
        if (e1.sign() != 0) {
            // ratio e1/e2 within [3, 5]
            ASSERT_LE(e2 * 3, e1) << e.str();
            ASSERT_GE(e2 * 5, e1) << e.str();
        } else {
            ASSERT_EQ(e2.sign(), 0);
        }
        ++checks;
    }
}

TEST(Derivative, RootRule) {
    Expr x = var("x");
    EvalOptions o;
    o.eps = Rational(1, 1000000000000LL);
    // d/dx sqrt(x) at 4 = 1/4
    Enclosure v = eval(derivative(sqrt(x), "x"), {{"x", Enclosure(4)}}, o);
    EXPECT_TRUE(v.contains(Rational(1, 4)));
    // d/dx cbrt(x^2 + 4) at 2 = (4)/(3*2^2) = 1/3
    v = eval(derivative(root(x * x + 4, 3), "x"), {{"x", Enclosure(2)}}, o);
    EXPECT_TRUE(v.contains(Rational(1, 3)));
}

TEST(Box, LinearTighteningAndEmptiness) {
    Evaluator ev;
    Box b;
    b.set("l", 0, 1).set("d", 2, 3);
    // sigma*l + d <= 5
    b.add(LinearConstraint{{{"l", kSigma}, {"d", 1}}, Cmp::Le, 5});
    ASSERT_TRUE(tighten(b, ev));
    EXPECT_LE(b["l"].hi(), Rational(3) / kSigma + Rational(1, 1000000));
    EXPECT_GE(b["l"].hi(), Rational(3) / kSigma);

    Box e;
    e.set("x", 0, 1).set("y", 0, 1);
    e.add(LinearConstraint{{{"x", 1}, {"y", 1}}, Cmp::Ge, 3});
    EXPECT_FALSE(tighten(e, ev));
}

TEST(Box, VarBoundAndNonpositive) {
    Evaluator ev;
    Box b;
    b.set("x", 0, 10).set("y", 1, 2);
    b.add(VarBound{"x", Cmp::Le, P("2*y")});
    ASSERT_TRUE(tighten(b, ev));
    EXPECT_EQ(b["x"].hi(), Rational(4));
    Box c = b;
    c.add_nonpositive(P("1 - x/100"));
    EXPECT_FALSE(tighten(c, ev));
}

TEST(Certify, CaseTwoStyleBoundIsExactAtCorner) {
    Box b;
    b.set("l", 0, Rational(3, 10));
    Certificate c = certify_sup_below(P("2/(1 - l)"), b, Rational(20, 7), false);
    EXPECT_EQ(c.verdict, Verdict::Certified);
    ASSERT_TRUE(c.upper);
    EXPECT_EQ(*c.upper, Rational(20, 7));
    // strict version is false at the corner and must be refuted there
    Certificate s = certify_sup_below(P("2/(1 - l)"), b, Rational(20, 7), true);
    EXPECT_EQ(s.verdict, Verdict::Refuted);
    EXPECT_EQ(s.witness.at("l"), Rational(3, 10));
}

TEST(Certify, TrivialCertifiedAndRefuted) {
    Box b;
    b.set("x", 0, 1);
    EXPECT_EQ(certify_sup_below(var("x"), b, 2, true).verdict, Verdict::Certified);
    Certificate r = certify_sup_below(var("x"), b, Rational(1, 2), true);
    EXPECT_EQ(r.verdict, Verdict::Refuted);
    EXPECT_EQ(r.witness.at("x"), Rational(1));
}

TEST(Certify, EmptyRegionIsVacuous) {
    Box b;
    b.set("x", 0, 1);
    b.add(LinearConstraint{{{"x", 1}}, Cmp::Ge, 2});
    Certificate c = certify_sup_below(var("x"), b, 0, true);
    EXPECT_EQ(c.verdict, Verdict::Certified);
    EXPECT_TRUE(c.vacuous);
}

TEST(Certify, StarvedBudgetIsInconclusive) {
    Box b;
    b.set("x", 0, 1).set("y", 0, 1);
    Expr e = P("x*y - x*y + x");
    CertifyOptions o;
    o.budget = 1;
    Certificate c = certify_sup_below(e, b, Rational(1), true, o);
    // sup is exactly 1 at x = 1, so strict is false: refuted at a corner even when starved
    EXPECT_EQ(c.verdict, Verdict::Refuted);
    Certificate d = certify_sup_below(P("x*y - x*y + x"), b, Rational(101, 100), true, o);
    EXPECT_EQ(d.verdict, Verdict::Inconclusive);
    EXPECT_TRUE(d.open_box);
    o.budget = 100000;
    EXPECT_EQ(certify_sup_below(e, b, Rational(101, 100), true, o).verdict, Verdict::Certified);
}

TEST(Certify, LowerSense) {
    Box b;
    b.set("x", 1, 2);
    Certificate c = certify_inf_above(P("x^2"), b, 1, false);
    EXPECT_EQ(c.verdict, Verdict::Certified);
    EXPECT_EQ(*c.upper, Rational(1));
    EXPECT_EQ(certify_inf_above(P("x^2"), b, 1, true).verdict, Verdict::Refuted);
}

TEST(Certify, BoundBracketsTheSupremum) {
    Box b;
    b.set("x", 0, 2);
    Certificate c = certify_sup_below(P("x*(2 - x)"), b, 2, true);
    ASSERT_EQ(c.verdict, Verdict::Certified);
    auto bound = c.bound();
    ASSERT_TRUE(bound);
    EXPECT_TRUE(bound->contains(Rational(1)));
}

TEST(Certify, MonotoneExamples) {
    // p(c) = (1-c) def / ((1-l) - c def t) is decreasing in c
    Expr p = P("(1 - c)*d/((1 - l) - c*d*t)");
    Box b;
    b.set("c", 0, Rational(1, 2)).set("d", 2).set("l", Rational(1, 10)).set("t", Rational(1, 10));
    b.set("d", Enclosure(2)).set("l", Enclosure(Rational(1, 10))).set("t", Enclosure(Rational(1, 10)));
    EXPECT_EQ(certify_monotone(p, b, "c", Direction::Decreasing).verdict, Verdict::Certified);
    EXPECT_EQ(certify_monotone(p, b, "c", Direction::Increasing).verdict, Verdict::Refuted);

    Expr q = P("bp/(1 - l - c*t)");
    Box bq;
    bq.set("c", 0, Rational(1, 2)).set("bp", Enclosure(Rational(1, 2))).set("l", Enclosure(Rational(1, 10))).set("t", Enclosure(Rational(1, 2)));
    EXPECT_EQ(certify_monotone(q, bq, "c", Direction::Increasing).verdict, Verdict::Certified);

    Box bx;
    bx.set("x", 0, 1);
    EXPECT_EQ(certify_monotone(Expr(3), bx, "x", Direction::Increasing).verdict, Verdict::Certified);
    EXPECT_EQ(certify_monotone(Expr(3), bx, "x", Direction::Decreasing).verdict, Verdict::Certified);
    EXPECT_THROW(certify_monotone(max(var("x"), Expr(0)), bx, "x", Direction::Increasing), UnsupportedShape);
}

TEST(Certify, MonotoneBudgetNeverFlipsVerdict) {
    Box b;
    b.set("q", 6, 10).set("l", 0, Rational(3, 10));
    Expr e = P("(5 - q*l)/(1 - l)");
    std::optional<Verdict> decided;
    for (std::int64_t budget : {10, 100, 1000, 10000}) {
        CertifyOptions o;
        o.budget = budget;
        Verdict v = certify_sup_below(e, b, Rational(51, 10), true, o).verdict;
        if (v != Verdict::Inconclusive) {
            if (decided) {
                EXPECT_EQ(*decided, v);
            }
            decided = v;
        }
    }
    EXPECT_EQ(decided, Verdict::Certified);
}

TEST(Polynomial, ExpansionAndSquareCompletion) {
    Polynomial p = to_polynomial(P("t^2/2 - (4*t - 8)"), "t");
    EXPECT_EQ(p, Polynomial({8, -4, Rational(1, 2)}));
    auto c = certify_nonnegative(p, 4, std::nullopt);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.minimum, Rational(0));
    EXPECT_EQ(*c.h, Rational(4));
    EXPECT_EQ(*c.k, Rational(0));
    auto bad = certify_nonnegative(to_polynomial(P("t - 3"), "t"), 0, Rational(4));
    EXPECT_FALSE(bad.holds);
    EXPECT_EQ(bad.argmin, Rational(0));
    EXPECT_THROW(to_polynomial(P("1/t"), "t"), UnsupportedShape);
}

TEST(Serialize, ExprAndBoxRoundTrip) {
    Expr x = var("x");
    Expr f = piecewise({{{x - 1}, root(x, 3) / (x + 2)}, {{1 - x}, min(x, Expr(Rational(1, 3))) * pow(x, -2)}});
    json j = to_json(f);
    Expr g = expr_from_json(json::parse(j.dump()));
    EXPECT_EQ(to_json(g), j);
    EXPECT_EQ(expr_from_json(json("2/(1 - l)")).str(), P("2/(1 - l)").str());

    Box b;
    b.set("l", 0, Rational(3, 10)).set("q", kSigma, 10);
    b.add(LinearConstraint{{{"l", 1}, {"q", Rational(1, 10)}}, Cmp::Le, 2});
    b.add(VarBound{"l", Cmp::Le, P("5/q")});
    b.add_nonpositive(P("l - 1"));
    json jb = to_json(b);
    Box back = box_from_json(json::parse(jb.dump()));
    EXPECT_EQ(to_json(back), jb);
}
