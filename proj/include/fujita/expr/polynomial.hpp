#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fujita/exact/rational.hpp"
#include "fujita/expr/expr.hpp"

namespace fujita {

/// Dense univariate polynomial with exact rational coefficients
/// (coeffs[i] multiplies t^i).
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Rational& v) { return Polynomial({v}); }
    static Polynomial identity() { return Polynomial({Rational(0), Rational(1)}); }

    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    bool is_zero() const { return c_.empty(); }

    Rational operator()(const Rational& t) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<Rational> r = a.c_;
        for (auto& x : r) x = -x;
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    Polynomial derivative() const {
        std::vector<Rational> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Rational(static_cast<long long>(i)));
        return Polynomial(std::move(r));
    }

    std::string str(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Rational& a = c_[static_cast<std::size_t>(i)];
            if (a.sign() == 0) continue;
            std::string mag = abs(a).str();
            if (!s.empty()) s += a.sign() < 0 ? " - " : " + ";
            else if (a.sign() < 0) s += "-";
            bool unit = abs(a) == Rational(1) && i > 0;
            s += unit ? "" : mag;
            if (i > 0) s += (unit ? "" : "*") + var + (i > 1 ? "^" + std::to_string(i) : "");
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().sign() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Expands an expression in a single variable into a polynomial. Only +, -,
/// *, non-negative integer powers and division by constants are accepted.
inline Polynomial to_polynomial(const Expr& e, const std::string& v) {
    const Node& n = e.node();
    auto rec = [&](const Expr& x) { return to_polynomial(x, v); };
    switch (n.op) {
    case Op::Const: return Polynomial::constant(n.value);
    case Op::Var:
        if (n.name != v) throw UnsupportedShape("polynomial in '" + v + "' meets variable '" + n.name + "'");
        return Polynomial::identity();
    case Op::Add: return rec(n.args[0]) + rec(n.args[1]);
    case Op::Sub: return rec(n.args[0]) - rec(n.args[1]);
    case Op::Neg: return -rec(n.args[0]);
    case Op::Mul: return rec(n.args[0]) * rec(n.args[1]);
    case Op::Div:
        if (!n.args[1].is_const()) throw UnsupportedShape("polynomial division by non-constant " + n.args[1].str());
        return rec(n.args[0]) * Polynomial::constant(Rational(1) / n.args[1].node().value);
    case Op::Pow: {
        if (n.k < 0) throw UnsupportedShape("negative power in polynomial");
        Polynomial base = rec(n.args[0]), acc = Polynomial::constant(1);
        for (long i = 0; i < n.k; ++i) acc = acc * base;
        return acc;
    }
    default: throw UnsupportedShape("not a polynomial node: " + e.str());
    }
}

/// Exact certificate that p(t) >= 0 on [lo, hi] (hi = nullopt: unbounded
/// above). Handles degree <= 2 exactly by completing the square:
/// p = a (t - h)^2 + k.
struct NonnegativityCertificate {
    bool holds = false;
    Rational minimum;                 // exact minimum of p on the interval
    Rational argmin;                  // where it is attained
    std::optional<Rational> a, h, k;  // square form, when degree == 2
    std::string detail;
};

inline NonnegativityCertificate certify_nonnegative(const Polynomial& p, const Rational& lo,
                                                    const std::optional<Rational>& hi) {
    if (hi && *hi < lo) throw DomainError("empty interval");
    NonnegativityCertificate cert;
    auto consider = [&](const Rational& t) {
        Rational v = p(t);
        if (cert.detail.empty() || v < cert.minimum) {
            cert.minimum = v;
            cert.argmin = t;
            cert.detail = "minimum at t = " + t.str();
        }
    };
    switch (p.degree()) {
    case -1:
    case 0:
        consider(lo);
        break;
    case 1:
        if (!hi && p.coeff(1).sign() < 0) {
            cert.holds = false;
            cert.detail = "decreasing linear polynomial on an unbounded interval";
            return cert;
        }
        consider(lo);
        if (hi) consider(*hi);
        break;
    case 2: {
        Rational a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
        Rational h = -b / (Rational(2) * a);
        Rational k = c - b * b / (Rational(4) * a);
        cert.a = a;
        cert.h = h;
        cert.k = k;
        if (!hi && a.sign() < 0) {
            cert.holds = false;
            cert.detail = "concave quadratic on an unbounded interval";
            return cert;
        }
        consider(lo);
        if (hi) consider(*hi);
        if (a.sign() > 0 && h > lo && (!hi || h < *hi)) consider(h);
        break;
    }
    default:
        throw UnsupportedShape("exact non-negativity only implemented up to degree 2");
    }
    cert.holds = cert.minimum.sign() >= 0;
    return cert;
}

} // namespace fujita
