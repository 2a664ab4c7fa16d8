#pragma once

// JSON form of expressions and boxes. Node-tagged trees:
//   {"const": "59999/10000"}   {"var": "lambda"}
//   {"op": "add"|"sub"|"mul"|"div"|"neg"|"min"|"max", "args": [...]}
//   {"op": "pow", "k": -2, "args": [x]}   {"op": "root", "n": 3, "args": [x]}
//   {"op": "piecewise", "pieces": [{"guards": [...], "value": ...}]}
// A plain JSON string is accepted anywhere an expression is expected and is
// read with parse_expr.

#include <json.hpp>

#include <string>

#include "fujita/expr/box.hpp"
#include "fujita/expr/expr.hpp"

namespace fujita {

using json = nlohmann::json;

inline json to_json(const Expr& e) {
    const Node& n = e.node();
    auto args = [&] {
        json a = json::array();
        for (const auto& x : n.args) a.push_back(to_json(x));
        return a;
    };
    switch (n.op) {
    case Op::Const: return {{"const", n.value.str()}};
    case Op::Var: return {{"var", n.name}};
    case Op::Add: return {{"op", "add"}, {"args", args()}};
    case Op::Sub: return {{"op", "sub"}, {"args", args()}};
    case Op::Mul: return {{"op", "mul"}, {"args", args()}};
    case Op::Div: return {{"op", "div"}, {"args", args()}};
    case Op::Neg: return {{"op", "neg"}, {"args", args()}};
    case Op::Min: return {{"op", "min"}, {"args", args()}};
    case Op::Max: return {{"op", "max"}, {"args", args()}};
    case Op::Pow: return {{"op", "pow"}, {"k", n.k}, {"args", args()}};
    case Op::Root: return {{"op", "root"}, {"n", n.k}, {"args", args()}};
    case Op::Piecewise: {
        json ps = json::array();
        for (const auto& p : n.pieces) {
            json g = json::array();
            for (const auto& x : p.guards) g.push_back(to_json(x));
            ps.push_back({{"guards", g}, {"value", to_json(p.value)}});
        }
        return {{"op", "piecewise"}, {"pieces", ps}};
    }
    }
    throw IntegrityError("unknown expression node");
}

inline Expr expr_from_json(const json& j, const std::map<std::string, Expr>& symbols = {}) {
    if (j.is_string()) return parse_expr(j.get<std::string>(), symbols);
    if (j.is_number_integer()) return Expr(Rational(j.get<long long>()));
    if (!j.is_object()) throw DomainError("expression must be an object or a formula string: " + j.dump());
    if (j.contains("const")) {
        const json& c = j.at("const");
        return Expr(c.is_string() ? Rational::parse(c.get<std::string>()) : Rational(c.get<long long>()));
    }
    if (j.contains("var")) {
        std::string name = j.at("var").get<std::string>();
        if (auto it = symbols.find(name); it != symbols.end()) return it->second;
        return var(name);
    }
    std::string op = j.at("op").get<std::string>();
    if (op == "piecewise") {
        std::vector<Piece> ps;
        for (const auto& p : j.at("pieces")) {
            Piece q;
            for (const auto& g : p.value("guards", json::array())) q.guards.push_back(expr_from_json(g, symbols));
            q.value = expr_from_json(p.at("value"), symbols);
            ps.push_back(std::move(q));
        }
        return piecewise(std::move(ps));
    }
    std::vector<Expr> a;
    for (const auto& x : j.at("args")) a.push_back(expr_from_json(x, symbols));
    auto need = [&](std::size_t k) {
        if (a.size() != k) throw DomainError("operator '" + op + "' expects " + std::to_string(k) + " argument(s)");
    };
    if (op == "add") { need(2); return a[0] + a[1]; }
    if (op == "sub") { need(2); return a[0] - a[1]; }
    if (op == "mul") { need(2); return a[0] * a[1]; }
    if (op == "div") { need(2); return a[0] / a[1]; }
    if (op == "neg") { need(1); return -a[0]; }
    if (op == "min") { need(2); return min(a[0], a[1]); }
    if (op == "max") { need(2); return max(a[0], a[1]); }
    if (op == "pow") { need(1); return pow(a[0], j.at("k").get<long>()); }
    if (op == "root") { need(1); return root(a[0], j.at("n").get<long>()); }
    throw DomainError("unknown expression operator '" + op + "'");
}

inline Cmp cmp_from_string(const std::string& s) {
    if (s == "<=" || s == "le") return Cmp::Le;
    if (s == ">=" || s == "ge") return Cmp::Ge;
    throw DomainError("unknown comparator '" + s + "'");
}

inline json to_json(const Box& box) {
    json vars = json::object();
    for (const auto& [k, v] : box.vars()) vars[k] = {v.lo().str(), v.hi().str()};
    json j{{"vars", vars}};
    const ConstraintSet& cs = box.constraints();
    if (!cs.linear.empty()) {
        json lin = json::array();
        for (const auto& c : cs.linear) {
            json co = json::object();
            for (const auto& [k, v] : c.coeffs) co[k] = v.str();
            lin.push_back({{"coeffs", co}, {"cmp", to_string(c.cmp)}, {"bound", c.bound.str()}});
        }
        j["linear"] = lin;
    }
    if (!cs.var_bounds.empty()) {
        json vb = json::array();
        for (const auto& c : cs.var_bounds)
            vb.push_back({{"var", c.var}, {"cmp", to_string(c.cmp)}, {"bound", to_json(c.bound)}});
        j["var_bounds"] = vb;
    }
    if (!cs.nonpositive.empty()) {
        json np = json::array();
        for (const auto& e : cs.nonpositive) np.push_back(to_json(e));
        j["nonpositive"] = np;
    }
    return j;
}

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw DomainError("rational must be a string or integer: " + j.dump());
}

inline Box box_from_json(const json& j, const std::map<std::string, Expr>& symbols = {}) {
    Box box;
    for (const auto& [k, v] : j.at("vars").items()) {
        if (v.is_array()) box.set(k, rational_from_json(v.at(0)), rational_from_json(v.at(1)));
        else box.set(k, Enclosure(rational_from_json(v)));
    }
    for (const auto& c : j.value("linear", json::array())) {
        LinearConstraint lc;
        for (const auto& [k, v] : c.at("coeffs").items()) lc.coeffs.emplace(k, rational_from_json(v));
        lc.cmp = cmp_from_string(c.at("cmp").get<std::string>());
        lc.bound = rational_from_json(c.at("bound"));
        box.add(std::move(lc));
    }
    for (const auto& c : j.value("var_bounds", json::array()))
        box.add(VarBound{c.at("var").get<std::string>(), cmp_from_string(c.at("cmp").get<std::string>()),
                         expr_from_json(c.at("bound"), symbols)});
    for (const auto& e : j.value("nonpositive", json::array())) box.add_nonpositive(expr_from_json(e, symbols));
    return box;
}

} // namespace fujita
