#pragma once

// Weighted dual graphs of minimal resolutions of surface germs.
// Vertex i is a smooth rational curve E_i with E_i^2 = -b_i; edges are
// transversal intersections. All arithmetic is exact.

#include <gmpxx.h>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fujita/exact/rational.hpp"

namespace fujita::surf {

using Matrix = std::vector<std::vector<long>>;
using Cycle = std::vector<long>; // coefficients a_i of sum a_i E_i

/// Leading principal minors of an integer matrix (Bareiss, exact).
inline std::vector<mpz_class> leading_minors(const Matrix& m) {
    std::size_t n = m.size();
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
    // Without pivoting the k-th Bareiss pivot is the k-th leading minor; a
    // zero pivot means that minor vanishes and the rest are reported as 0.
    std::vector<mpz_class> minors;
    mpz_class prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            minors.resize(n, 0);
            return minors;
        }
        minors.push_back(a[k][k]);
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return minors;
}

inline bool is_negative_definite(const Matrix& m) {
    auto minors = leading_minors(m);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        int want = (k % 2 == 0) ? -1 : 1; // sign (-1)^(k+1) for the (k+1)-th minor
        if (sgn(minors[k]) != want) return false;
    }
    return true;
}

class DualGraph {
public:
    /// Validating constructor: weights b_i >= 2, simple connected graph,
    /// negative definite intersection matrix. Edges are 0-based.
    DualGraph(std::vector<int> weights, std::vector<std::pair<int, int>> edges)
        : b_(std::move(weights)), edges_(std::move(edges)) {
        if (auto why = defect()) throw DomainError("invalid dual graph: " + *why);
    }

    /// Unvalidated graph, for probing the checks themselves.
    static DualGraph unchecked(std::vector<int> weights, std::vector<std::pair<int, int>> edges) {
        return DualGraph(std::move(weights), std::move(edges), 0);
    }

    std::size_t size() const { return b_.size(); }
    const std::vector<int>& weights() const { return b_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    bool is_tree() const { return edges_.size() + 1 == b_.size() && connected(); }

    Matrix intersection_matrix() const {
        Matrix m(size(), std::vector<long>(size(), 0));
        for (std::size_t i = 0; i < size(); ++i) m[i][i] = -b_[i];
        for (auto [i, j] : edges_) {
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += 1;
            m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += 1;
        }
        return m;
    }

    /// First violated structural condition, if any.
    std::optional<std::string> defect() const {
        if (b_.empty()) return "no vertices";
        for (std::size_t i = 0; i < size(); ++i)
            if (b_[i] < 2) return "vertex " + std::to_string(i + 1) + " has weight -" + std::to_string(b_[i]) + " (need b >= 2)";
        std::vector<std::pair<int, int>> seen;
        for (auto [i, j] : edges_) {
            if (i < 0 || j < 0 || i >= static_cast<int>(size()) || j >= static_cast<int>(size()))
                return "edge endpoint out of range";
            if (i == j) return "self-loop at vertex " + std::to_string(i + 1);
            std::pair<int, int> key{std::min(i, j), std::max(i, j)};
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) return "repeated edge";
            seen.emplace_back(key);
        }
        if (!connected()) return "not connected";
        if (!is_negative_definite(intersection_matrix())) return "intersection matrix is not negative definite";
        return std::nullopt;
    }

    /// D . D' for cycles.
    long dot(const Cycle& a, const Cycle& c) const {
        long s = 0;
        for (std::size_t j = 0; j < size(); ++j) s += c[j] * dot_vertex(a, j);
        return s;
    }

    /// D . E_j
    long dot_vertex(const Cycle& a, std::size_t j) const {
        long s = -b_[j] * a[j];
        for (auto [u, v] : edges_) {
            if (static_cast<std::size_t>(u) == j) s += a[static_cast<std::size_t>(v)];
            if (static_cast<std::size_t>(v) == j) s += a[static_cast<std::size_t>(u)];
        }
        return s;
    }

    /// K . D with K . E_j = -E_j^2 - 2 = b_j - 2 (all E_j rational curves).
    long canonical_dot(const Cycle& a) const {
        long s = 0;
        for (std::size_t j = 0; j < size(); ++j) s += a[j] * (b_[j] - 2);
        return s;
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(size());
        for (auto [i, j] : edges_) {
            adj[static_cast<std::size_t>(i)].push_back(j);
            adj[static_cast<std::size_t>(j)].push_back(i);
        }
        return adj;
    }

    std::string str() const;

private:
    DualGraph(std::vector<int> weights, std::vector<std::pair<int, int>> edges, int)
        : b_(std::move(weights)), edges_(std::move(edges)) {}

    bool connected() const {
        if (b_.empty()) return false;
        auto adj = adjacency();
        std::vector<bool> seen(size(), false);
        std::vector<int> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (w < 0 || w >= static_cast<int>(size()) || seen[static_cast<std::size_t>(w)]) continue;
                seen[static_cast<std::size_t>(w)] = true;
                ++count;
                stack.push_back(w);
            }
        }
        return count == size();
    }

    std::vector<int> b_;
    std::vector<std::pair<int, int>> edges_;
};

// ---------------------------------------------------------------------------
// JSON: {"weights": [b1, ...], "edges": [[i, j], ...]}, 1-based vertices.

inline nlohmann::json to_json(const DualGraph& g) {
    nlohmann::json e = nlohmann::json::array();
    for (auto [i, j] : g.edges()) e.push_back({i + 1, j + 1});
    return {{"weights", g.weights()}, {"edges", e}};
}

inline DualGraph graph_from_json(const nlohmann::json& j) {
    std::vector<int> w = j.at("weights").get<std::vector<int>>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
        if (!e.is_array() || e.size() != 2) throw DomainError("edge must be a pair [i, j]: " + e.dump());
        edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
    }
    return DualGraph(std::move(w), std::move(edges));
}

inline std::string DualGraph::str() const { return to_json(*this).dump(); }

// ---------------------------------------------------------------------------
// Fundamental cycle, rationality, multiplicity

/// Laufer's sequence: start from sum E_i and add E_i while Z . E_i > 0.
inline Cycle fundamental_cycle(const DualGraph& g) {
    Cycle z(g.size(), 1);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g.dot_vertex(z, i) > 0) {
                ++z[i];
                changed = true;
                break;
            }
        }
    }
    return z;
}

inline bool is_anti_nef(const DualGraph& g, const Cycle& z) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.dot_vertex(z, i) > 0) return false;
    return true;
}

/// p_a(D) = 1 + (D^2 + K.D)/2; D^2 + K.D is even by adjunction.
inline long arithmetic_genus(const DualGraph& g, const Cycle& d) {
    long twice = g.dot(d, d) + g.canonical_dot(d);
    if (twice % 2 != 0) throw IntegrityError("odd D^2 + K.D for " + g.str());
    return 1 + twice / 2;
}

inline bool is_rational(const DualGraph& g) { return arithmetic_genus(g, fundamental_cycle(g)) == 0; }

/// m = -Z^2, cross-checked against K.Z = m - 2.
inline long multiplicity(const DualGraph& g) {
    Cycle z = fundamental_cycle(g);
    if (arithmetic_genus(g, z) != 0) throw DomainError("multiplicity formula needs a rational graph: " + g.str());
    long m = -g.dot(z, z);
    if (g.canonical_dot(z) != m - 2)
        throw IntegrityError("K.Z = " + std::to_string(g.canonical_dot(z)) + " but -Z^2 - 2 = " + std::to_string(m - 2));
    return m;
}

/// Embedding dimension of a rational surface singularity, e = m + 1.
inline long embedding_dimension(const DualGraph& g) { return multiplicity(g) + 1; }

// ---------------------------------------------------------------------------
// Discrepancies and mld

/// Solve (sum_i a_i E_i) . E_j = b_j - 2 for all j, exactly. The result is
/// the relative canonical divisor K = sum a_i E_i.
inline std::vector<Rational> discrepancies(const DualGraph& g) {
    std::size_t n = g.size();
    Matrix m = g.intersection_matrix();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
        a[i][n] = Rational(g.weights()[i] - 2);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col].sign() == 0) ++piv;
        if (piv == n) throw IntegrityError("singular intersection matrix for " + g.str());
        std::swap(a[col], a[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col].sign() == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
    return x;
}

/// (K . E_j) - (b_j - 2) for each j; identically zero for a solution.
inline std::vector<Rational> adjunction_residual(const DualGraph& g, const std::vector<Rational>& k) {
    Matrix m = g.intersection_matrix();
    std::vector<Rational> r(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        Rational s(0);
        for (std::size_t i = 0; i < g.size(); ++i) s += k[i] * Rational(m[i][j]);
        r[j] = s - Rational(g.weights()[j] - 2);
    }
    return r;
}

/// min over exceptional curves of the log discrepancy 1 + a_i. For a log
/// canonical germ this is the mld; a negative value flags a germ that is not
/// log canonical.
inline Rational mld(const DualGraph& g) {
    auto k = discrepancies(g);
    if (k.empty()) throw DomainError("mld of an empty graph");
    Rational best = Rational(1) + k[0];
    for (const auto& a : k) best = min(best, Rational(1) + a);
    return best;
}

// ---------------------------------------------------------------------------
// Brute-force cross-checks for small graphs

inline void for_each_vector(std::size_t n, long lo, long hi, const std::function<void(const Cycle&)>& f) {
    Cycle v(n, lo);
    while (true) {
        f(v);
        std::size_t i = 0;
        while (i < n && v[i] == hi) v[i++] = lo;
        if (i == n) return;
        ++v[i];
    }
}

/// Componentwise minimum of all anti-nef cycles with 1 <= a_i <= bound, or
/// nullopt when there is none in range. Anti-nef cycles >= sum E_i are closed
/// under componentwise minimum, so this is the fundamental cycle whenever
/// the bound is large enough.
inline std::optional<Cycle> brute_force_fundamental_cycle(const DualGraph& g, long bound) {
    std::optional<Cycle> best;
    for_each_vector(g.size(), 1, bound, [&](const Cycle& v) {
        if (!is_anti_nef(g, v)) return;
        if (!best) best = v;
        else
            for (std::size_t i = 0; i < v.size(); ++i) (*best)[i] = std::min((*best)[i], v[i]);
    });
    if (best && !is_anti_nef(g, *best)) throw IntegrityError("minimum of anti-nef cycles is not anti-nef");
    return best;
}

/// x^T M x < 0 for every nonzero x in [-r, r]^n.
inline bool brute_force_negative_on_box(const DualGraph& g, long r) {
    bool ok = true;
    for_each_vector(g.size(), -r, r, [&](const Cycle& v) {
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return;
        if (g.dot(v, v) >= 0) ok = false;
    });
    return ok;
}

/// Artin's criterion on a box: p_a(D) <= 0 for every D > 0 with coefficients
/// in [0, bound].
inline bool artin_on_box(const DualGraph& g, long bound) {
    bool ok = true;
    for_each_vector(g.size(), 0, bound, [&](const Cycle& v) {
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) return;
        if (arithmetic_genus(g, v) > 0) ok = false;
    });
    return ok;
}

} // namespace fujita::surf
