#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "fujita/expr/box.hpp"
#include "fujita/expr/derivative.hpp"
#include "fujita/expr/eval.hpp"

namespace fujita {

enum class Verdict { Certified, Refuted, Inconclusive };
enum class Sense { Upper, Lower }; // Upper: sup e < c (or <=); Lower: inf e > c (or >=)
enum class Direction { Increasing, Decreasing };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Refuted: return "Refuted";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}
inline const char* to_string(Sense s) { return s == Sense::Upper ? "upper" : "lower"; }

struct CertifyOptions {
    std::int64_t budget = 100000; // leaf-box evaluations
    EvalOptions eval;
    TightenOptions tighten;
    bool monotonicity = true; // fix variables with certified gradient sign to their extreme endpoint
    int corner_probe_limit = 6;
};

/// Outcome of a region claim.
///
/// For Sense::Upper `upper` is a certified bound on sup e over the feasible
/// region and `lower` the best certified value found at a feasible point, so
/// lower <= sup <= upper. For Sense::Lower the roles refer to inf e and the
/// inequalities flip.
struct Certificate {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Rational> upper;
    std::optional<Rational> lower;
    std::int64_t leaves = 0;
    bool vacuous = false;
    std::map<std::string, Rational> witness;        // point achieving `lower` (Refuted: the counterexample)
    std::optional<Env> open_box;                     // Inconclusive: the worst unresolved leaf
    std::string message;

    bool certified() const { return verdict == Verdict::Certified; }

    /// Achieved bound as an enclosure of the extremum, when both ends are known.
    std::optional<Enclosure> bound() const {
        if (!upper || !lower) return std::nullopt;
        return Enclosure(min(*lower, *upper), max(*lower, *upper));
    }
};

namespace detail {

struct Leaf {
    Box box;
    std::optional<Rational> hi; // nullopt: evaluation failed, treated as +infinity
    std::int64_t id = 0;
};

struct LeafOrder {
    bool operator()(const Leaf& a, const Leaf& b) const {
        // true when a has lower priority than b
        if (!a.hi != !b.hi) return static_cast<bool>(a.hi);
        if (a.hi && *a.hi != *b.hi) return *a.hi < *b.hi;
        return a.id > b.id;
    }
};

class SupSearch {
public:
    SupSearch(const Expr& e, const Rational& c, bool strict, const CertifyOptions& opts)
        : e_(e), c_(c), strict_(strict), opts_(opts), ev_(opts.eval) {
        if (opts.monotonicity) {
            for (const auto& v : e.vars()) {
                try {
                    grad_.emplace(v, derivative(e, v));
                } catch (const UnsupportedShape&) {
                }
            }
        }
    }

    Certificate run(const Box& input) {
        Certificate cert;
        if (opts_.budget <= 0) throw DomainError("certification budget must be positive");
        Box root = input;
        cert.leaves = 1;
        if (!tighten(root, ev_, opts_.tighten)) {
            cert.verdict = Verdict::Certified;
            cert.vacuous = true;
            cert.message = "region is empty after constraint propagation";
            return cert;
        }
        root_ = root;

        Leaf first{root, upper_of(root), next_id_++};
        if (resolved(first)) {
            note_resolved(first);
            probe(root.midpoint(), cert);
            return finish(cert);
        }
        probe_corners(root, cert);
        if (cert.verdict == Verdict::Refuted) return cert;

        std::priority_queue<Leaf, std::vector<Leaf>, LeafOrder> queue;
        queue.push(std::move(first));
        while (!queue.empty()) {
            Leaf leaf = queue.top();
            queue.pop();
            probe(leaf.box.midpoint(), cert);
            if (cert.verdict == Verdict::Refuted) return cert;

            auto axis = leaf.box.widest();
            if (!axis) {
                // Point leaf: only precision can help.
                if (!refine_point(leaf, cert)) return cert;
                continue;
            }
            if (cert.leaves + 2 > opts_.budget) {
                queue.push(std::move(leaf));
                return inconclusive(cert, queue.top(), queue);
            }
            auto [a, b] = leaf.box.bisect(*axis);
            for (Box* child : {&a, &b}) {
                ++cert.leaves;
                if (!tighten(*child, ev_, opts_.tighten)) continue; // pruned: infeasible
                Leaf l{std::move(*child), std::nullopt, next_id_++};
                l.hi = upper_of(l.box);
                if (resolved(l)) note_resolved(l);
                else queue.push(std::move(l));
            }
        }
        return finish(cert);
    }

private:
    bool ok(const Rational& hi) const { return strict_ ? hi < c_ : hi <= c_; }
    bool resolved(const Leaf& l) const { return l.hi && ok(*l.hi); }

    void note_resolved(const Leaf& l) {
        if (!resolved_max_ || *l.hi > *resolved_max_) resolved_max_ = *l.hi;
    }

    // Certified upper bound of e over the box, or nullopt when evaluation fails.
    std::optional<Rational> upper_of(const Box& box) {
        Enclosure natural;
        try {
            natural = ev_.eval(e_, box.vars());
        } catch (const MathError&) {
            return std::nullopt;
        }
        Rational hi = natural.hi();
        if (grad_.empty() || box.is_point()) return hi;
        Env fixed = box.vars();
        bool any = false;
        for (const auto& [v, g] : grad_) {
            const Enclosure& r = box[v];
            if (r.is_point()) continue;
            Enclosure gv;
            try {
                gv = ev_.eval(g, box.vars());
            } catch (const MathError&) {
                continue;
            }
            if (gv.lo().sign() >= 0) {
                fixed[v] = Enclosure(r.hi());
                any = true;
            } else if (gv.hi().sign() <= 0) {
                fixed[v] = Enclosure(r.lo());
                any = true;
            }
        }
        if (any) {
            try {
                hi = min(hi, ev_.eval(e_, fixed).hi());
            } catch (const MathError&) {
            }
        }
        return hi;
    }

    // Evaluate at a point; record it as a lower witness or refutation.
    void probe(const std::map<std::string, Rational>& point, Certificate& cert) {
        Box pb = root_.at(point);
        if (!certainly_feasible(pb, ev_)) return;
        Enclosure v;
        try {
            v = ev_.eval(e_, pb.vars());
        } catch (const MathError&) {
            return;
        }
        if (!cert.lower || v.lo() > *cert.lower) {
            cert.lower = v.lo();
            cert.witness = point;
        }
        if (strict_ ? v.lo() >= c_ : v.lo() > c_) {
            cert.verdict = Verdict::Refuted;
            cert.upper.reset();
            cert.message = "value at witness point is certainly " + std::string(strict_ ? ">= " : "> ") + c_.str();
        }
    }

    void probe_corners(const Box& box, Certificate& cert) {
        std::vector<std::string> free;
        for (const auto& [k, v] : box.vars())
            if (!v.is_point()) free.push_back(k);
        if (static_cast<int>(free.size()) > opts_.corner_probe_limit) return;
        for (std::uint64_t mask = 0; mask < (1ULL << free.size()); ++mask) {
            auto p = box.midpoint();
            for (std::size_t i = 0; i < free.size(); ++i) {
                const Enclosure& r = box[free[i]];
                p[free[i]] = (mask >> i) & 1 ? r.hi() : r.lo();
            }
            probe(p, cert);
            if (cert.verdict == Verdict::Refuted) return;
        }
    }

    // A point leaf that is not resolved at working precision: retry finer.
    bool refine_point(const Leaf& leaf, Certificate& cert) {
        EvalOptions fine = opts_.eval;
        for (int round = 0; round < 4; ++round) {
            fine.eps = fine.eps / Rational(1LL << 20);
            fine.precision_bits *= 2;
            Evaluator ev(fine);
            try {
                Enclosure v = ev.eval(e_, leaf.box.vars());
                if (ok(v.hi())) {
                    if (!resolved_max_ || v.hi() > *resolved_max_) resolved_max_ = v.hi();
                    return true;
                }
            } catch (const MathError& err) {
                cert.message = std::string("evaluation fails at a point: ") + err.what();
                break;
            }
        }
        cert.verdict = Verdict::Inconclusive;
        cert.open_box = leaf.box.vars();
        if (cert.message.empty()) cert.message = "point leaf cannot be resolved at any tried precision";
        return false;
    }

    template <class Q>
    Certificate inconclusive(Certificate& cert, const Leaf& worst, const Q&) {
        cert.verdict = Verdict::Inconclusive;
        cert.open_box = worst.box.vars();
        if (worst.hi) cert.upper = resolved_max_ ? max(*worst.hi, *resolved_max_) : *worst.hi;
        cert.message = "budget of " + std::to_string(opts_.budget) + " leaf evaluations exhausted";
        return cert;
    }

    Certificate finish(Certificate& cert) {
        cert.verdict = Verdict::Certified;
        cert.upper = resolved_max_;
        if (!resolved_max_) cert.vacuous = true; // every leaf was pruned
        return cert;
    }

    Expr e_;
    Rational c_;
    bool strict_;
    CertifyOptions opts_;
    Evaluator ev_;
    std::map<std::string, Expr> grad_;
    Box root_;
    std::optional<Rational> resolved_max_;
    std::int64_t next_id_ = 0;
};

} // namespace detail

/// Prove sup of e over the feasible part of box is < c (strict) or <= c.
///
/// Certified: every leaf of an adaptive bisection has a certified upper bound
/// below c. Refuted: some feasible point certainly violates the bound.
/// Inconclusive: budget exhausted or a point leaf that cannot be resolved.
inline Certificate certify_sup_below(const Expr& e, const Box& box, const Rational& c, bool strict,
                                     const CertifyOptions& opts = {}) {
    return detail::SupSearch(e, c, strict, opts).run(box);
}

/// Prove inf of e over the feasible region is > c (strict) or >= c.
inline Certificate certify_inf_above(const Expr& e, const Box& box, const Rational& c, bool strict,
                                     const CertifyOptions& opts = {}) {
    Certificate cert = certify_sup_below(-e, box, -c, strict, opts);
    auto flip = [](std::optional<Rational>& r) {
        if (r) r = -*r;
    };
    flip(cert.upper);
    flip(cert.lower);
    return cert;
}

inline Certificate certify(const Expr& e, const Box& box, Sense sense, const Rational& c, bool strict,
                           const CertifyOptions& opts = {}) {
    return sense == Sense::Upper ? certify_sup_below(e, box, c, strict, opts)
                                 : certify_inf_above(e, box, c, strict, opts);
}

/// Certify that e is (non-strictly) monotone in `v` over the box by bounding
/// the sign of the symbolic partial derivative. Throws UnsupportedShape when
/// v reaches a min/max/piecewise node.
inline Certificate certify_monotone(const Expr& e, const Box& box, const std::string& v, Direction dir,
                                    const CertifyOptions& opts = {}) {
    Expr d = derivative(e, v);
    return dir == Direction::Increasing ? certify_inf_above(d, box, Rational(0), false, opts)
                                        : certify_sup_below(d, box, Rational(0), false, opts);
}

} // namespace fujita
