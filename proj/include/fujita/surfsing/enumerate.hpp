#pragma once

// Exhaustive enumeration of weighted trees and the mld <= 2/m check.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fujita/surfsing/dual_graph.hpp"

namespace fujita::surf {

namespace detail {

using Edges = std::vector<std::pair<int, int>>;

inline std::string rooted_form(const std::vector<std::vector<int>>& adj, const std::vector<int>& w, int v, int parent) {
    std::vector<std::string> kids;
    for (int c : adj[static_cast<std::size_t>(v)])
        if (c != parent) kids.push_back(rooted_form(adj, w, c, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + std::to_string(w[static_cast<std::size_t>(v)]);
    for (const auto& k : kids) s += k;
    return s + ")";
}

inline std::vector<int> tree_centers(const std::vector<std::vector<int>>& adj) {
    std::size_t n = adj.size();
    std::vector<std::size_t> deg(n);
    std::vector<int> layer;
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] = adj[i].size();
        if (deg[i] <= 1) layer.push_back(static_cast<int>(i));
    }
    std::size_t left = n;
    while (left > 2) {
        std::vector<int> next;
        left -= layer.size();
        for (int v : layer)
            for (int u : adj[static_cast<std::size_t>(v)])
                if (--deg[static_cast<std::size_t>(u)] == 1) next.push_back(u);
        layer = std::move(next);
    }
    return layer;
}

/// Prufer decoding on vertices 0..n-1 (n >= 2, sequence length n - 2).
inline Edges prufer_tree(const std::vector<int>& seq, int n) {
    std::vector<int> degree(static_cast<std::size_t>(n), 1);
    for (int x : seq) ++degree[static_cast<std::size_t>(x)];
    Edges edges;
    for (int x : seq) {
        for (int leaf = 0; leaf < n; ++leaf) {
            if (degree[static_cast<std::size_t>(leaf)] == 1) {
                edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
                --degree[static_cast<std::size_t>(leaf)];
                --degree[static_cast<std::size_t>(x)];
                break;
            }
        }
    }
    int u = -1, v = -1;
    for (int i = 0; i < n; ++i) {
        if (degree[static_cast<std::size_t>(i)] == 1) (u < 0 ? u : v) = i;
    }
    edges.emplace_back(u, v);
    return edges;
}

inline std::vector<std::vector<int>> adjacency_of(int n, const Edges& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (auto [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

} // namespace detail

/// Canonical string of a weighted tree: the smaller of the rooted forms at
/// its center(s). Two weighted trees are isomorphic iff their strings agree.
inline std::string canonical_form(int n, const detail::Edges& edges, const std::vector<int>& weights) {
    auto adj = detail::adjacency_of(n, edges);
    std::string best;
    for (int c : detail::tree_centers(adj)) {
        std::string s = detail::rooted_form(adj, weights, c, -1);
        if (best.empty() || s < best) best = s;
    }
    return best;
}

inline std::string canonical_form(const DualGraph& g) {
    if (!g.is_tree()) throw DomainError("canonical form is defined for trees only");
    return canonical_form(static_cast<int>(g.size()), g.edges(), g.weights());
}

/// Unlabeled tree shapes on n vertices, one labeled representative each.
inline std::vector<detail::Edges> tree_shapes(int n) {
    if (n < 1) throw DomainError("tree needs at least one vertex");
    if (n == 1) return {{}};
    if (n == 2) return {{{0, 1}}};
    std::map<std::string, detail::Edges> shapes;
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0), unit(static_cast<std::size_t>(n), 0);
    while (true) {
        detail::Edges e = detail::prufer_tree(seq, n);
        shapes.emplace(canonical_form(n, e, unit), e);
        std::size_t i = 0;
        while (i < seq.size() && seq[i] == n - 1) seq[i++] = 0;
        if (i == seq.size()) break;
        ++seq[i];
    }
    std::vector<detail::Edges> out;
    for (auto& [k, e] : shapes) out.push_back(std::move(e));
    return out;
}

/// Every weighted tree on <= max_vertices vertices with weights in
/// [2, max_weight] and negative definite intersection matrix, each once up to
/// isomorphism. Ordered by vertex count, then canonical form.
inline std::vector<DualGraph> negative_definite_trees(int max_vertices, int max_weight) {
    if (max_vertices < 1 || max_weight < 2) throw DomainError("need max_vertices >= 1 and max_weight >= 2");
    std::vector<DualGraph> out;
    for (int n = 1; n <= max_vertices; ++n) {
        std::map<std::string, DualGraph> seen;
        for (const auto& shape : tree_shapes(n)) {
            std::vector<int> w(static_cast<std::size_t>(n), 2);
            while (true) {
                std::string key = canonical_form(n, shape, w);
                if (!seen.count(key)) seen.emplace(key, DualGraph::unchecked(w, shape));
                std::size_t i = 0;
                while (i < w.size() && w[i] == max_weight) w[i++] = 2;
                if (i == w.size()) break;
                ++w[i];
            }
        }
        for (auto& [k, g] : seen)
            if (!g.defect()) out.push_back(DualGraph(g.weights(), g.edges()));
    }
    return out;
}

/// The rational ones among negative_definite_trees, as a stream.
inline void for_each_graph(int max_vertices, int max_weight, const std::function<void(const DualGraph&)>& f) {
    for (const auto& g : negative_definite_trees(max_vertices, max_weight))
        if (is_rational(g)) f(g);
}

inline std::vector<DualGraph> enumerate_graphs(int max_vertices, int max_weight) {
    std::vector<DualGraph> out;
    for_each_graph(max_vertices, max_weight, [&](const DualGraph& g) { out.push_back(g); });
    return out;
}

// ---------------------------------------------------------------------------
// Reports

struct MldRange {
    long count = 0;
    Rational min_mld{1}, max_mld{0};
};

struct MldReport {
    int max_vertices = 0, max_weight = 0;
    long graphs = 0;
    std::map<long, MldRange> by_multiplicity;
    std::vector<std::string> violations;    // serialized graphs with mld > 2/m
    long not_log_canonical = 0;             // some log discrepancy < 0 (the bound then holds trivially)
    bool residuals_zero = true;             // adjunction system solved exactly
    bool discrepancies_nonpositive = true;  // all a_i <= 0, hence mld <= 1
    bool single_vertex_equality = true;     // mld = 2/b and m = b for a single -b curve
    bool passed() const {
        return violations.empty() && residuals_zero && discrepancies_nonpositive && single_vertex_equality;
    }
};

inline MldReport verify_mld_theorem(int max_vertices, int max_weight) {
    MldReport r;
    r.max_vertices = max_vertices;
    r.max_weight = max_weight;
    for_each_graph(max_vertices, max_weight, [&](const DualGraph& g) {
        ++r.graphs;
        long m = multiplicity(g);
        auto k = discrepancies(g);
        for (const auto& x : adjunction_residual(g, k))
            if (x.sign() != 0) r.residuals_zero = false;
        for (const auto& a : k)
            if (a.sign() > 0) r.discrepancies_nonpositive = false;
        Rational v = mld(g);
        if (v > Rational(2, m)) r.violations.push_back(g.str());
        if (v.sign() < 0) ++r.not_log_canonical;
        MldRange& range = r.by_multiplicity[m];
        range.min_mld = range.count ? min(range.min_mld, v) : v;
        range.max_mld = range.count ? max(range.max_mld, v) : v;
        ++range.count;
        if (g.size() == 1) {
            long b = g.weights()[0];
            if (m != b || v != Rational(2, b)) r.single_vertex_equality = false;
        }
    });
    std::sort(r.violations.begin(), r.violations.end());
    return r;
}

inline nlohmann::json to_json(const MldReport& r) {
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [m, range] : r.by_multiplicity)
        per[std::to_string(m)] = {{"count", range.count}, {"min_mld", range.min_mld.str()}, {"max_mld", range.max_mld.str()},
                                  {"bound", Rational(2, m).str()}};
    return {{"max_vertices", r.max_vertices},
            {"max_weight", r.max_weight},
            {"graphs", r.graphs},
            {"by_multiplicity", per},
            {"violations", r.violations},
            {"not_log_canonical", r.not_log_canonical},
            {"residuals_zero", r.residuals_zero},
            {"discrepancies_nonpositive", r.discrepancies_nonpositive},
            {"single_vertex_equality", r.single_vertex_equality},
            {"passed", r.passed()}};
}

/// Multiplicity-3 graphs containing a (-2)-curve: mld distribution and the
/// bound mld <= 2/3.
struct M3Report {
    long instances = 0;
    std::optional<Rational> min_mld, max_mld;
    std::vector<std::string> violations;
    bool passed() const { return violations.empty(); }
    std::string note() const { return instances ? std::to_string(instances) + " instances" : "no instances"; }
};

inline M3Report verify_m3_minus2_claim(int max_vertices, int max_weight) {
    M3Report r;
    for_each_graph(max_vertices, max_weight, [&](const DualGraph& g) {
        const auto& w = g.weights();
        if (multiplicity(g) != 3 || std::find(w.begin(), w.end(), 2) == w.end()) return;
        ++r.instances;
        Rational v = mld(g);
        r.min_mld = r.min_mld ? min(*r.min_mld, v) : v;
        r.max_mld = r.max_mld ? max(*r.max_mld, v) : v;
        if (v > Rational(2, 3)) r.violations.push_back(g.str());
    });
    std::sort(r.violations.begin(), r.violations.end());
    return r;
}

inline nlohmann::json to_json(const M3Report& r) {
    nlohmann::json j{{"instances", r.instances}, {"note", r.note()}, {"violations", r.violations}, {"passed", r.passed()}};
    if (r.min_mld) j["min_mld"] = r.min_mld->str();
    if (r.max_mld) j["max_mld"] = r.max_mld->str();
    return j;
}

/// Laufer's sequence against exhaustive search for the fundamental cycle on
/// every negative definite tree of the given size.
struct LauferCheck {
    long graphs = 0;
    std::vector<std::string> disagreements;
    bool passed() const { return graphs > 0 && disagreements.empty(); }
};

inline LauferCheck verify_laufer_brute_force(int max_vertices, int max_weight, long bound) {
    LauferCheck r;
    for (const auto& g : negative_definite_trees(max_vertices, max_weight)) {
        ++r.graphs;
        auto bf = brute_force_fundamental_cycle(g, bound);
        if (!bf || *bf != fundamental_cycle(g)) r.disagreements.push_back(g.str());
    }
    return r;
}

inline nlohmann::json to_json(const LauferCheck& r) {
    return {{"graphs", r.graphs}, {"disagreements", r.disagreements}, {"passed", r.passed()}};
}

} // namespace fujita::surf
