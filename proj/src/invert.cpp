#include "invpack/invert.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "invpack/errors.hpp"

namespace invpack {

ConflictGraph conflict_graph(const Collection& c) {
    const std::size_t n = c.ground_size();
    // forbidden[i] = union of the sets containing i
    std::vector<Subset> forbidden(n, Subset(n));
    for (const auto& s : c) {
        s.for_each([&](std::size_t i) { forbidden[i] |= s; });
    }
    ConflictGraph g(n, n);
    for (std::size_t i = 0; i < n; ++i) g.set_neighbours(i, forbidden[i].complement());
    return g;
}

MatchingResult maximum_matching(const ConflictGraph& g) {
    if (g.left_size() != g.right_size()) throw std::invalid_argument("conflict graph must be square");
    const Matching m = hopcroft_karp(g);
    MatchingResult result;
    if (m.left_perfect()) {
        result.matched = Permutation(m.mate_left);
    } else {
        result.certificate = hall_violator(g, m);
    }
    return result;
}

MatchingResult decide_invertible(const Collection& c) {
    MatchingResult result = maximum_matching(conflict_graph(c));
    if (result.matched) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!inverts(*result.matched, c[i])) {
                throw std::logic_error("matching permutation fails to invert set " + std::to_string(i));
            }
        }
    }
    return result;
}

std::optional<Permutation> brute_force_invertible(const Collection& c, std::size_t limit) {
    const std::size_t n = c.ground_size();
    if (n > limit) {
        throw LimitExceeded("brute force needs n <= " + std::to_string(limit) + ", got n = " + std::to_string(n));
    }
    // Element lists avoid re-scanning bit vectors inside the n! loop.
    std::vector<std::vector<std::size_t>> members;
    members.reserve(c.size());
    for (const auto& s : c) members.push_back(s.elements());

    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t k = 0; k < members.size() && ok; ++k) {
            for (auto x : members[k]) {
                if (c[k].contains(image[x])) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return Permutation(image);
    } while (std::next_permutation(image.begin(), image.end()));
    return std::nullopt;
}

bool check_disjoint_criterion(const Collection& c) {
    Subset seen(c.ground_size());
    for (const auto& s : c) {
        if (seen.intersects(s)) throw std::invalid_argument("sets are not pairwise disjoint");
        seen |= s;
    }
    return std::all_of(c.begin(), c.end(),
                       [&](const Subset& s) { return 2 * s.cardinality() <= c.ground_size(); });
}

bool check_triple(const Collection& c) {
    if (c.size() != 3) throw std::invalid_argument("check_triple needs exactly three sets");
    const std::size_t k = c[0].cardinality();
    if (c[1].cardinality() != k || c[2].cardinality() != k) {
        throw std::invalid_argument("check_triple needs three sets of equal size");
    }
    const auto n = static_cast<long long>(c.ground_size());
    const auto common = static_cast<long long>((c[0] & c[1] & c[2]).cardinality());
    const auto outside = static_cast<long long>((c[0] | c[1] | c[2]).complement().cardinality());
    const auto kk = static_cast<long long>(k);
    return common <= outside && 2 * outside <= 2 * common + 3 * (n - 2 * kk);
}

bool check_halfsize_conditions(const Collection& c) {
    const std::size_t n = c.ground_size();
    if (n % 2 != 0) throw std::invalid_argument("half-size conditions need an even ground set");
    for (const auto& s : c) {
        if (2 * s.cardinality() != n) throw std::invalid_argument("half-size conditions need |S_i| = n/2");
    }
    const std::size_t m = c.size();
    std::map<std::vector<Subset::word_type>, std::size_t> atoms;
    for (std::size_t x = 0; x < n; ++x) {
        Subset signature(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (c[i].contains(x)) signature.insert(i);
        }
        const auto w = signature.words();
        ++atoms[std::vector<Subset::word_type>(w.begin(), w.end())];
    }
    for (const auto& [key, size] : atoms) {
        Subset signature(m);
        std::copy(key.begin(), key.end(), signature.mutable_words().begin());
        const Subset mirror_signature = signature.complement();
        const auto w = mirror_signature.words();
        const auto it = atoms.find(std::vector<Subset::word_type>(w.begin(), w.end()));
        const std::size_t mirror = it == atoms.end() ? 0 : it->second;
        if (mirror != size) return false;
    }
    return true;
}

}  // namespace invpack
