#pragma once

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fujita/exact/errors.hpp"
#include "fujita/exact/rational.hpp"

namespace fujita {

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Root, Min, Max, Piecewise };

class Node;

/// Immutable expression handle. Copies share the underlying tree.
class Expr {
public:
    Expr() = default;
    Expr(const Rational& c);   // NOLINT(google-explicit-constructor)
    Expr(int c) : Expr(Rational(c)) {} // NOLINT(google-explicit-constructor)
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}

    const Node& node() const { return *n_; }
    const Node* get() const { return n_.get(); }
    explicit operator bool() const { return static_cast<bool>(n_); }

    Op op() const;
    bool is_const() const;
    bool is_const(const Rational& v) const;
    const std::vector<std::string>& vars() const;
    bool depends_on(const std::string& v) const;
    std::string str() const;

private:
    std::shared_ptr<const Node> n_;
};

/// One branch of a piecewise expression: active where every guard is >= 0.
struct Piece {
    std::vector<Expr> guards;
    Expr value;
};

class Node {
public:
    Op op = Op::Const;
    Rational value;          // Const
    std::string name;        // Var
    long k = 0;              // Pow exponent / Root degree
    std::vector<Expr> args;
    std::vector<Piece> pieces;
    std::vector<std::string> vars; // sorted, unique free variables

    bool constant() const { return vars.empty(); }
};

namespace detail {

inline std::vector<std::string> merge_vars(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline Expr make(Op op, std::vector<Expr> args, long k = 0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->k = k;
    for (const auto& a : args) n->vars = merge_vars(std::move(n->vars), a.vars());
    n->args = std::move(args);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

} // namespace detail

inline Expr::Expr(const Rational& c) {
    auto n = std::make_shared<Node>();
    n->op = Op::Const;
    n->value = c;
    n_ = std::move(n);
}

inline Op Expr::op() const { return n_->op; }
inline bool Expr::is_const() const { return n_->op == Op::Const; }
inline bool Expr::is_const(const Rational& v) const { return is_const() && n_->value == v; }
inline const std::vector<std::string>& Expr::vars() const { return n_->vars; }
inline bool Expr::depends_on(const std::string& v) const {
    return std::binary_search(n_->vars.begin(), n_->vars.end(), v);
}

inline Expr constant(const Rational& c) { return Expr(c); }
inline Expr constant(std::string_view decimal) { return Expr(Rational::parse(decimal)); }

inline Expr var(const std::string& name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->name = name;
    n->vars = {name};
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

// Builders fold constants and trivial identities; nothing beyond that.

inline Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(a.node().value + b.node().value);
    if (a.is_const(0)) return b;
    if (b.is_const(0)) return a;
    return detail::make(Op::Add, {a, b});
}

inline Expr operator-(const Expr& a) {
    if (a.is_const()) return Expr(-a.node().value);
    if (a.op() == Op::Neg) return a.node().args[0];
    return detail::make(Op::Neg, {a});
}

inline Expr operator-(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(a.node().value - b.node().value);
    if (b.is_const(0)) return a;
    if (a.is_const(0)) return -b;
    return detail::make(Op::Sub, {a, b});
}

inline Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(a.node().value * b.node().value);
    if (a.is_const(0) || b.is_const(0)) return Expr(0);
    if (a.is_const(1)) return b;
    if (b.is_const(1)) return a;
    if (a.is_const(-1)) return -b;
    if (b.is_const(-1)) return -a;
    return detail::make(Op::Mul, {a, b});
}

inline Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_const(0)) throw DivisionByZero("division by constant zero in expression");
    if (a.is_const() && b.is_const()) return Expr(a.node().value / b.node().value);
    if (b.is_const(1)) return a;
    if (a.is_const(0) && b.is_const()) return Expr(0);
    return detail::make(Op::Div, {a, b});
}

inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }
inline Expr& operator/=(Expr& a, const Expr& b) { return a = a / b; }

inline Expr pow(const Expr& a, long k) {
    if (k == 0) return Expr(1);
    if (k == 1) return a;
    if (a.is_const()) return Expr(pow(a.node().value, k));
    return detail::make(Op::Pow, {a}, k);
}

/// Real n-th root of a non-negative argument.
inline Expr root(const Expr& a, long n) {
    if (n < 1) throw DomainError("root degree must be positive");
    if (n == 1) return a;
    if (a.is_const(0) || a.is_const(1)) return a;
    return detail::make(Op::Root, {a}, n);
}
inline Expr sqrt(const Expr& a) { return root(a, 2); }

inline Expr min(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(min(a.node().value, b.node().value));
    return detail::make(Op::Min, {a, b});
}
inline Expr max(const Expr& a, const Expr& b) {
    if (a.is_const() && b.is_const()) return Expr(max(a.node().value, b.node().value));
    return detail::make(Op::Max, {a, b});
}

/// Piecewise expression. Guards are closed (g >= 0); where several pieces
/// apply, evaluation takes the hull of their branches.
inline Expr piecewise(std::vector<Piece> pieces) {
    if (pieces.empty()) throw DomainError("piecewise expression without pieces");
    auto n = std::make_shared<Node>();
    n->op = Op::Piecewise;
    for (const auto& p : pieces) {
        if (!p.value) throw DomainError("piecewise branch without value");
        n->vars = detail::merge_vars(std::move(n->vars), p.value.vars());
        for (const auto& g : p.guards) n->vars = detail::merge_vars(std::move(n->vars), g.vars());
    }
    n->pieces = std::move(pieces);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

/// Replace variables by expressions (used to bind parameters to constants).
inline Expr substitute(const Expr& e, const std::map<std::string, Expr>& binding) {
    const Node& n = e.node();
    bool touched = std::any_of(n.vars.begin(), n.vars.end(),
                               [&](const std::string& v) { return binding.count(v) != 0; });
    if (!touched) return e;
    auto sub = [&](const Expr& x) { return substitute(x, binding); };
    switch (n.op) {
    case Op::Const: return e;
    case Op::Var: return binding.at(n.name);
    case Op::Add: return sub(n.args[0]) + sub(n.args[1]);
    case Op::Sub: return sub(n.args[0]) - sub(n.args[1]);
    case Op::Mul: return sub(n.args[0]) * sub(n.args[1]);
    case Op::Div: return sub(n.args[0]) / sub(n.args[1]);
    case Op::Neg: return -sub(n.args[0]);
    case Op::Pow: return pow(sub(n.args[0]), n.k);
    case Op::Root: return root(sub(n.args[0]), n.k);
    case Op::Min: return min(sub(n.args[0]), sub(n.args[1]));
    case Op::Max: return max(sub(n.args[0]), sub(n.args[1]));
    case Op::Piecewise: {
        std::vector<Piece> ps;
        for (const auto& p : n.pieces) {
            Piece q;
            for (const auto& g : p.guards) q.guards.push_back(sub(g));
            q.value = sub(p.value);
            ps.push_back(std::move(q));
        }
        return piecewise(std::move(ps));
    }
    }
    return e;
}

inline std::size_t node_count(const Expr& e) {
    const Node& n = e.node();
    std::size_t c = 1;
    for (const auto& a : n.args) c += node_count(a);
    for (const auto& p : n.pieces) {
        c += node_count(p.value);
        for (const auto& g : p.guards) c += node_count(g);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Printing. The output re-parses with parse_expr (piecewise excepted).

namespace detail {

inline int precedence(const Expr& e) {
    switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Const: {
        const Rational& v = e.node().value;
        if (v.sign() < 0) return 3;
        return v.is_integer() ? 5 : 2;
    }
    default: return 5;
    }
}

inline std::string wrap(const Expr& e, int min_prec) {
    std::string s = e.str();
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

} // namespace detail

inline std::string Expr::str() const {
    const Node& n = *n_;
    using detail::wrap;
    switch (n.op) {
    case Op::Const: return n.value.str();
    case Op::Var: return n.name;
    case Op::Add: return wrap(n.args[0], 1) + " + " + wrap(n.args[1], 2);
    case Op::Sub: return wrap(n.args[0], 1) + " - " + wrap(n.args[1], 2);
    case Op::Mul: return wrap(n.args[0], 2) + "*" + wrap(n.args[1], 3);
    case Op::Div: return wrap(n.args[0], 2) + "/" + wrap(n.args[1], 3);
    case Op::Neg: return "-" + wrap(n.args[0], 3);
    case Op::Pow:
        return wrap(n.args[0], 5) + "^" + (n.k < 0 ? "(" + std::to_string(n.k) + ")" : std::to_string(n.k));
    case Op::Root:
        if (n.k == 2) return "sqrt(" + n.args[0].str() + ")";
        return "root(" + n.args[0].str() + ", " + std::to_string(n.k) + ")";
    case Op::Min: return "min(" + n.args[0].str() + ", " + n.args[1].str() + ")";
    case Op::Max: return "max(" + n.args[0].str() + ", " + n.args[1].str() + ")";
    case Op::Piecewise: {
        std::string s = "piecewise{";
        for (std::size_t i = 0; i < n.pieces.size(); ++i) {
            if (i) s += "; ";
            const auto& p = n.pieces[i];
            for (std::size_t j = 0; j < p.guards.size(); ++j) s += (j ? ", " : "") + p.guards[j].str() + " >= 0";
            s += (p.guards.empty() ? "" : " : ") + p.value.str();
        }
        return s + "}";
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Parsing of infix formulas:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' int | '^' '(' int ')')?
//   atom  := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
// Functions: sqrt, cbrt, root(x, n), min, max. Names found in `symbols`
// are replaced by the bound expression; all others become variables.

class ExprParser {
public:
    ExprParser(std::string_view text, const std::map<std::string, Expr>& symbols)
        : s_(text), symbols_(symbols) {}

    Expr parse() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw DomainError("parse error at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "': " + what);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }

    Expr expr() {
        Expr e = term();
        for (;;) {
            if (eat('+')) e = e + term();
            else if (eat('-')) e = e - term();
            else return e;
        }
    }
    Expr term() {
        Expr e = unary();
        for (;;) {
            if (eat('*')) e = e * unary();
            else if (eat('/')) e = e / unary();
            else return e;
        }
    }
    Expr unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    long integer() {
        skip();
        bool paren = eat('(');
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        long v = std::stol(std::string(s_.substr(start, pos_ - start)));
        if (paren) expect(')');
        return v;
    }
    Expr power() {
        Expr base = atom();
        if (eat('^')) return pow(base, integer());
        return base;
    }
    Expr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
                std::size_t save = pos_++;
                if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
                } else {
                    pos_ = save;
                }
            }
            return Expr(Rational::parse(s_.substr(start, pos_ - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (eat('(')) return call(name);
            if (auto it = symbols_.find(name); it != symbols_.end()) return it->second;
            return var(name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
    Expr call(const std::string& name) {
        if (name == "root") {
            Expr a = expr();
            expect(',');
            long n = integer();
            expect(')');
            return root(a, n);
        }
        std::vector<Expr> args{expr()};
        while (eat(',')) args.push_back(expr());
        expect(')');
        if (name == "sqrt" && args.size() == 1) return root(args[0], 2);
        if (name == "cbrt" && args.size() == 1) return root(args[0], 3);
        if ((name == "min" || name == "max") && args.size() >= 2) {
            Expr acc = args[0];
            for (std::size_t i = 1; i < args.size(); ++i) acc = name == "min" ? min(acc, args[i]) : max(acc, args[i]);
            return acc;
        }
        fail("unknown function '" + name + "' with " + std::to_string(args.size()) + " argument(s)");
    }

    std::string_view s_;
    const std::map<std::string, Expr>& symbols_;
    std::size_t pos_ = 0;
};

inline Expr parse_expr(std::string_view text, const std::map<std::string, Expr>& symbols = {}) {
    return ExprParser(text, symbols).parse();
}

} // namespace fujita
