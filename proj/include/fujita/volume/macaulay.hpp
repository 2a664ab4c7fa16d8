#pragma once

// d-th Macaulay coefficients of a positive integer:
//   alpha = C(c(d), d) + C(c(d-1), d-1) + ... + C(c(1), 1),
//   c(d) > c(d-1) > ... > c(1) >= 0,  C(i, j) = 0 for i < j.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "fujita/exact/errors.hpp"

namespace fujita::volume {

/// C(n, k) with C(n, k) = 0 whenever n < k (including negative n).
/// Throws DomainError on int64 overflow.
inline std::int64_t binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < k) return 0;
    if (k > n - k) k = n - k;
    __int128 r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i; // exact: r * (n-k+i) is divisible by i at every step
        if (r > std::numeric_limits<std::int64_t>::max())
            throw DomainError("binomial C(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows int64");
    }
    return static_cast<std::int64_t>(r);
}

struct MacaulayRep {
    int d = 0;
    std::vector<std::int64_t> c; // c[0] = c(d), c[1] = c(d-1), ..., c[d-1] = c(1)

    std::int64_t coefficient(int i) const { return c.at(static_cast<std::size_t>(d - i)); } // c(i)

    bool valid() const {
        if (d < 1 || static_cast<int>(c.size()) != d) return false;
        for (std::size_t j = 0; j + 1 < c.size(); ++j)
            if (c[j] <= c[j + 1]) return false;
        return c.back() >= 0;
    }

    std::int64_t value() const {
        std::int64_t s = 0;
        for (int i = d; i >= 1; --i) s += binom(coefficient(i), i);
        return s;
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t j = 0; j < c.size(); ++j) s += (j ? ", " : "") + std::to_string(c[j]);
        return s + ")";
    }

    friend bool operator==(const MacaulayRep&, const MacaulayRep&) = default;
};

/// Greedy decomposition: c(i) is the largest integer with C(c(i), i) <= the
/// remainder. C(i-1, i) = 0, so the search starts at i - 1 and the resulting
/// sequence is strictly decreasing.
inline MacaulayRep macaulay_decompose(std::int64_t alpha, int d) {
    if (alpha < 1) throw DomainError("Macaulay decomposition needs alpha >= 1, got " + std::to_string(alpha));
    if (d < 1) throw DomainError("Macaulay decomposition needs d >= 1, got " + std::to_string(d));
    MacaulayRep rep{d, {}};
    std::int64_t rest = alpha;
    for (int i = d; i >= 1; --i) {
        std::int64_t c = i - 1;
        while (binom(c + 1, i) <= rest) ++c;
        rep.c.push_back(c);
        rest -= binom(c, i);
    }
    if (rest != 0) throw IntegrityError("Macaulay decomposition left remainder " + std::to_string(rest));
    return rep;
}

/// alpha_<d> = sum_i C(c(i) - 1, i).
inline std::int64_t macaulay_shift(const MacaulayRep& rep) {
    if (!rep.valid()) throw DomainError("not a Macaulay representation: " + rep.str());
    std::int64_t s = 0;
    for (int i = rep.d; i >= 1; --i) s += binom(rep.coefficient(i) - 1, i);
    return s;
}

inline std::int64_t macaulay_shift(std::int64_t alpha, int d) { return macaulay_shift(macaulay_decompose(alpha, d)); }

} // namespace fujita::volume
