#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fujita/exact/enclosure.hpp"
#include "fujita/expr/expr.hpp"

namespace fujita {

using Env = std::map<std::string, Enclosure>;

struct EvalOptions {
    Rational eps{1, 1000000000};      // width target for root enclosures
    unsigned long precision_bits = 256; // endpoints wider than this get rounded outward
};

/// Interval evaluator. Caches variable-free subtrees, so one instance should
/// be reused across the many evaluations of a subdivision run. Not thread-safe;
/// use one per thread.
class Evaluator {
public:
    explicit Evaluator(EvalOptions opts = {}) : opts_(std::move(opts)) {}

    const EvalOptions& options() const { return opts_; }

    Enclosure operator()(const Expr& e, const Env& env) { return eval(e, env); }

    Enclosure eval(const Expr& e, const Env& env) {
        const Node& n = e.node();
        if (n.constant() && n.op != Op::Const) {
            if (auto it = cache_.find(&n); it != cache_.end()) return it->second;
            Enclosure v = compute(n, env);
            cache_.emplace(&n, v);
            // Keep the expression alive while it is a cache key.
            keep_.push_back(e);
            return v;
        }
        return compute(n, env);
    }

private:
    Enclosure tidy(Enclosure v) const {
        if (v.max_denominator_bits() > opts_.precision_bits) return v.rounded(opts_.precision_bits);
        return v;
    }

    Enclosure compute(const Node& n, const Env& env) {
        switch (n.op) {
        case Op::Const: return Enclosure(n.value);
        case Op::Var: {
            auto it = env.find(n.name);
            if (it == env.end()) throw UnboundVariable(n.name);
            return it->second;
        }
        case Op::Add: return tidy(eval(n.args[0], env) + eval(n.args[1], env));
        case Op::Sub: return tidy(eval(n.args[0], env) - eval(n.args[1], env));
        case Op::Mul: return tidy(eval(n.args[0], env) * eval(n.args[1], env));
        case Op::Div: {
            Enclosure num = eval(n.args[0], env);
            Enclosure den = eval(n.args[1], env);
            if (den.contains_zero())
                throw DivisionByZero("denominator " + n.args[1].str() + " encloses zero: " + den.str());
            return tidy(num / den);
        }
        case Op::Neg: return -eval(n.args[0], env);
        case Op::Pow: {
            Enclosure b = eval(n.args[0], env);
            if (n.k < 0 && b.contains_zero())
                throw DivisionByZero("negative power of " + n.args[0].str() + " enclosing zero: " + b.str());
            return tidy(pow(b, n.k));
        }
        case Op::Root: {
            Enclosure a = eval(n.args[0], env);
            if (a.lo().sign() < 0)
                throw DomainError("root of " + n.args[0].str() + " reaching below zero: " + a.str());
            return tidy(nth_root(a, static_cast<unsigned long>(n.k), opts_.eps));
        }
        case Op::Min: return min(eval(n.args[0], env), eval(n.args[1], env));
        case Op::Max: return max(eval(n.args[0], env), eval(n.args[1], env));
        case Op::Piecewise: {
            std::optional<Enclosure> acc;
            for (const auto& p : n.pieces) {
                bool possible = true;
                for (const auto& g : p.guards) {
                    if (eval(g, env).hi().sign() < 0) {
                        possible = false;
                        break;
                    }
                }
                if (!possible) continue;
                Enclosure v = eval(p.value, env);
                acc = acc ? hull(*acc, v) : v;
            }
            if (!acc) throw DomainError("no piece applies in " + Expr(std::shared_ptr<const Node>(&n, [](const Node*) {})).str());
            return *acc;
        }
        }
        throw IntegrityError("unknown expression node");
    }

    EvalOptions opts_;
    std::unordered_map<const Node*, Enclosure> cache_;
    std::vector<Expr> keep_;
};

/// One-shot evaluation over an environment.
inline Enclosure eval(const Expr& e, const Env& env, const EvalOptions& opts = {}) {
    Evaluator ev(opts);
    return ev.eval(e, env);
}

/// Evaluation at an exact point.
inline Enclosure eval_at(const Expr& e, const std::map<std::string, Rational>& point, const EvalOptions& opts = {}) {
    Env env;
    for (const auto& [k, v] : point) env.emplace(k, Enclosure(v));
    return eval(e, env, opts);
}

} // namespace fujita
