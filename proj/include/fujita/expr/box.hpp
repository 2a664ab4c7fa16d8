#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fujita/exact/enclosure.hpp"
#include "fujita/expr/eval.hpp"
#include "fujita/expr/expr.hpp"

namespace fujita {

enum class Cmp { Le, Ge };

inline const char* to_string(Cmp c) { return c == Cmp::Le ? "<=" : ">="; }

/// sum_i coeffs[i] * x_i  (<= | >=)  bound
struct LinearConstraint {
    std::map<std::string, Rational> coeffs;
    Cmp cmp = Cmp::Le;
    Rational bound;
};

/// var (<= | >=) expr, where expr mentions other variables only.
struct VarBound {
    std::string var;
    Cmp cmp = Cmp::Le;
    Expr bound;
};

struct ConstraintSet {
    std::vector<LinearConstraint> linear;
    std::vector<VarBound> var_bounds;
    std::vector<Expr> nonpositive; // each expression must be <= 0

    bool empty() const { return linear.empty() && var_bounds.empty() && nonpositive.empty(); }
};

/// Parameter box: closed per-variable ranges plus shared constraints.
class Box {
public:
    Box() : cons_(std::make_shared<ConstraintSet>()) {}
    explicit Box(Env vars, std::shared_ptr<const ConstraintSet> cons = nullptr)
        : vars_(std::move(vars)), cons_(cons ? std::move(cons) : std::make_shared<ConstraintSet>()) {}

    Box& set(const std::string& name, Enclosure range) {
        vars_.insert_or_assign(name, std::move(range));
        return *this;
    }
    Box& set(const std::string& name, const Rational& lo, const Rational& hi) { return set(name, Enclosure(lo, hi)); }

    Box& add(LinearConstraint c) {
        mutable_constraints().linear.push_back(std::move(c));
        return *this;
    }
    Box& add(VarBound c) {
        mutable_constraints().var_bounds.push_back(std::move(c));
        return *this;
    }
    Box& add_nonpositive(Expr e) {
        mutable_constraints().nonpositive.push_back(std::move(e));
        return *this;
    }

    const Env& vars() const { return vars_; }
    Env& vars() { return vars_; }
    const Enclosure& operator[](const std::string& name) const {
        auto it = vars_.find(name);
        if (it == vars_.end()) throw UnboundVariable(name);
        return it->second;
    }
    const ConstraintSet& constraints() const { return *cons_; }
    const std::shared_ptr<const ConstraintSet>& constraint_ptr() const { return cons_; }

    bool is_point() const {
        for (const auto& [k, v] : vars_)
            if (!v.is_point()) return false;
        return true;
    }

    /// Variable with the largest absolute width (ties: first in name order).
    std::optional<std::string> widest() const {
        std::optional<std::string> best;
        Rational w(0);
        for (const auto& [k, v] : vars_) {
            Rational vw = v.width();
            if (vw > w) {
                w = vw;
                best = k;
            }
        }
        return best;
    }

    std::pair<Box, Box> bisect(const std::string& name) const {
        const Enclosure& r = (*this)[name];
        Rational mid = r.midpoint();
        Box a = *this, b = *this;
        a.vars_.insert_or_assign(name, Enclosure(r.lo(), mid));
        b.vars_.insert_or_assign(name, Enclosure(mid, r.hi()));
        return {std::move(a), std::move(b)};
    }

    std::map<std::string, Rational> midpoint() const {
        std::map<std::string, Rational> p;
        for (const auto& [k, v] : vars_) p.emplace(k, v.midpoint());
        return p;
    }

    Box at(const std::map<std::string, Rational>& point) const {
        Box b(Env{}, cons_);
        for (const auto& [k, v] : point) b.vars_.emplace(k, Enclosure(v));
        return b;
    }

    std::string str() const {
        std::string s = "{";
        bool first = true;
        for (const auto& [k, v] : vars_) {
            s += (first ? "" : ", ") + k + " in " + v.str();
            first = false;
        }
        return s + "}";
    }

private:
    ConstraintSet& mutable_constraints() {
        // Copy-on-write: boxes produced by bisection share their constraint set.
        if (cons_.use_count() > 1) cons_ = std::make_shared<ConstraintSet>(*cons_);
        return const_cast<ConstraintSet&>(*cons_);
    }

    Env vars_;
    std::shared_ptr<const ConstraintSet> cons_;
};

struct TightenOptions {
    int max_rounds = 6;
    unsigned long bits = 96; // tightened bounds are rounded outward to this grid
};

namespace detail {

// Narrow one variable toward a new upper (or lower) bound, rounding the bound
// outward so denominators stay small. Returns false when the range empties.
inline bool narrow(Env& vars, const std::string& name, const Rational& bound, Cmp cmp, unsigned long bits, bool& changed) {
    auto it = vars.find(name);
    if (it == vars.end()) throw UnboundVariable(name);
    const Enclosure& r = it->second;
    if (cmp == Cmp::Le) {
        Rational b = round_up(bound, bits);
        if (b < r.lo()) return false; // b >= bound, so the exact bound is below lo too
        if (b < r.hi()) {
            it->second = Enclosure(r.lo(), b);
            changed = true;
        }
    } else {
        Rational b = round_down(bound, bits);
        if (b > r.hi()) return false;
        if (b > r.lo()) {
            it->second = Enclosure(b, r.hi());
            changed = true;
        }
    }
    return true;
}

} // namespace detail

/// Bound propagation over all constraints. Returns false if the box is
/// certainly infeasible (then its contents are unspecified). Sound: no point
/// satisfying the constraints is ever removed.
inline bool tighten(Box& box, Evaluator& ev, const TightenOptions& opts = {}) {
    const ConstraintSet& cs = box.constraints();
    if (cs.empty()) return true;
    Env& vars = box.vars();
    for (int round = 0; round < opts.max_rounds; ++round) {
        bool changed = false;
        for (const auto& c : cs.linear) {
            // Normalize to sum a_i x_i <= b.
            int s = c.cmp == Cmp::Le ? 1 : -1;
            std::vector<Enclosure> terms;
            Rational total_lo(0);
            for (const auto& [name, a] : c.coeffs) {
                terms.push_back(Enclosure(Rational(s) * a) * vars.at(name));
                total_lo += terms.back().lo();
            }
            Rational b = Rational(s) * c.bound;
            if (total_lo > b) return false;
            std::size_t i = 0;
            for (const auto& [name, a0] : c.coeffs) {
                Rational a = Rational(s) * a0;
                const Enclosure& term = terms[i++];
                if (a.sign() == 0) continue;
                // a x <= b - (min of the other terms)
                Rational rest_lo = total_lo - term.lo();
                Rational limit = (b - rest_lo) / a;
                if (!detail::narrow(vars, name, limit, a.sign() > 0 ? Cmp::Le : Cmp::Ge, opts.bits, changed)) return false;
            }
        }
        for (const auto& vb : cs.var_bounds) {
            Enclosure e;
            try {
                e = ev.eval(vb.bound, vars);
            } catch (const MathError&) {
                continue; // cannot propagate on this box; constraint still checked at points
            }
            if (!detail::narrow(vars, vb.var, vb.cmp == Cmp::Le ? e.hi() : e.lo(), vb.cmp, opts.bits, changed)) return false;
        }
        for (const auto& np : cs.nonpositive) {
            try {
                if (ev.eval(np, vars).lo().sign() > 0) return false;
            } catch (const MathError&) {
            }
        }
        if (!changed) break;
    }
    return true;
}

/// True when every constraint certainly holds at the (point) box.
inline bool certainly_feasible(const Box& point, Evaluator& ev) {
    const ConstraintSet& cs = point.constraints();
    const Env& vars = point.vars();
    try {
        for (const auto& c : cs.linear) {
            Enclosure total(0);
            for (const auto& [name, a] : c.coeffs) total += Enclosure(a) * vars.at(name);
            if (c.cmp == Cmp::Le ? total.hi() > c.bound : total.lo() < c.bound) return false;
        }
        for (const auto& vb : cs.var_bounds) {
            Enclosure x = vars.at(vb.var);
            Enclosure e = ev.eval(vb.bound, vars);
            if (vb.cmp == Cmp::Le ? x.hi() > e.lo() : x.lo() < e.hi()) return false;
        }
        for (const auto& np : cs.nonpositive)
            if (ev.eval(np, vars).hi().sign() > 0) return false;
    } catch (const MathError&) {
        return false;
    }
    return true;
}

} // namespace fujita
