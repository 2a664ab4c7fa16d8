#pragma once

#include <string>

#include "fujita/expr/expr.hpp"

namespace fujita {

/// Symbolic partial derivative d e / d v.
///
/// Min, Max and Piecewise are not differentiated: if v occurs beneath one of
/// them the call throws UnsupportedShape (split the piecewise first).
inline Expr derivative(const Expr& e, const std::string& v) {
    if (!e.depends_on(v)) return Expr(0);
    const Node& n = e.node();
    auto d = [&](const Expr& x) { return derivative(x, v); };
    switch (n.op) {
    case Op::Const: return Expr(0);
    case Op::Var: return Expr(1);
    case Op::Add: return d(n.args[0]) + d(n.args[1]);
    case Op::Sub: return d(n.args[0]) - d(n.args[1]);
    case Op::Neg: return -d(n.args[0]);
    case Op::Mul: {
        const Expr& a = n.args[0];
        const Expr& b = n.args[1];
        return d(a) * b + a * d(b);
    }
    case Op::Div: {
        const Expr& a = n.args[0];
        const Expr& b = n.args[1];
        if (!b.depends_on(v)) return d(a) / b;
        return (d(a) * b - a * d(b)) / pow(b, 2);
    }
    case Op::Pow: {
        const Expr& u = n.args[0];
        return Expr(Rational(n.k)) * pow(u, n.k - 1) * d(u);
    }
    case Op::Root: {
        // (u^(1/k))' = u' / (k * root(u, k)^(k-1))
        const Expr& u = n.args[0];
        return d(u) / (Expr(Rational(n.k)) * pow(e, n.k - 1));
    }
    case Op::Min:
    case Op::Max:
    case Op::Piecewise:
        throw UnsupportedShape("cannot differentiate through " + std::string(n.op == Op::Min ? "min" : n.op == Op::Max ? "max" : "piecewise") +
                               " with respect to '" + v + "'");
    }
    throw IntegrityError("unknown expression node");
}

/// Gradient restricted to the listed variables.
inline std::map<std::string, Expr> gradient(const Expr& e, const std::vector<std::string>& vars) {
    std::map<std::string, Expr> g;
    for (const auto& v : vars) g.emplace(v, derivative(e, v));
    return g;
}

} // namespace fujita
