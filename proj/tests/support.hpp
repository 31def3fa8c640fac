#pragma once

// Test-side oracles. These deliberately avoid the library's algorithms: sets
// are plain bit masks and every search is a direct enumeration.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "invpack/setcore.hpp"

namespace oracle {

using Mask = std::uint32_t;

inline invpack::Subset to_subset(std::size_t n, Mask m) {
    invpack::Subset s(n);
    for (std::size_t x = 0; x < n; ++x) {
        if (m >> x & 1U) s.insert(x);
    }
    return s;
}

inline invpack::Collection to_collection(std::size_t n, const std::vector<Mask>& sets) {
    invpack::Collection c(n);
    for (Mask m : sets) c.push_back(to_subset(n, m));
    return c;
}

inline Mask image_mask(const std::vector<int>& p, Mask m) {
    Mask out = 0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (m >> x & 1U) out |= Mask{1} << p[x];
    }
    return out;
}

inline std::size_t inverted_by(const std::vector<int>& p, const std::vector<Mask>& sets) {
    std::size_t k = 0;
    for (Mask m : sets) k += (image_mask(p, m) & m) == 0 ? 1 : 0;
    return k;
}

/// p is an involution with exactly floor(n/2) two-cycles.
inline bool is_simple(const std::vector<int>& p) {
    std::size_t fixed = 0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (static_cast<std::size_t>(p[p[x]]) != x) return false;
        if (static_cast<std::size_t>(p[x]) == x) ++fixed;
    }
    return fixed == p.size() % 2;
}

template <class F>
void for_each_permutation(std::size_t n, F&& f) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        f(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

inline bool invertible(std::size_t n, const std::vector<Mask>& sets) {
    bool found = false;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        found = inverted_by(p, sets) == sets.size();
    } while (!found && std::next_permutation(p.begin(), p.end()));
    return found;
}

inline std::size_t best_count(std::size_t n, const std::vector<Mask>& sets, bool simple_only) {
    std::size_t best = 0;
    for_each_permutation(n, [&](const std::vector<int>& p) {
        if (!simple_only || is_simple(p)) best = std::max(best, inverted_by(p, sets));
    });
    return best;
}

inline std::vector<Mask> random_sets(std::mt19937_64& rng, std::size_t n, std::size_t m) {
    std::uniform_int_distribution<Mask> pick(0, (Mask{1} << n) - 1);
    std::vector<Mask> out;
    while (out.size() < m) {
        const Mask s = pick(rng);
        if (s != 0) out.push_back(s);
    }
    return out;
}

inline std::vector<Mask> random_sets_of_size(std::mt19937_64& rng, std::size_t n, std::size_t m, std::size_t k) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<Mask> out;
    for (std::size_t i = 0; i < m; ++i) {
        std::shuffle(idx.begin(), idx.end(), rng);
        Mask s = 0;
        for (std::size_t j = 0; j < k; ++j) s |= Mask{1} << idx[j];
        out.push_back(s);
    }
    return out;
}

inline std::size_t popcount(Mask m) { return static_cast<std::size_t>(__builtin_popcount(m)); }

}  // namespace oracle
