#pragma once

#include <cstddef>
#include <optional>

#include "invpack/matching.hpp"
#include "invpack/setcore.hpp"

namespace invpack {

/// Conflict graph of a collection: two copies of [0, n), with left i joined
/// to right j iff no member set contains both i and j (i == j included).
/// Perfect matchings are exactly the permutations inverting every member.
using ConflictGraph = BipartiteGraph;

/// Outcome of a perfect-matching search: exactly one field is engaged.
struct MatchingResult {
    std::optional<Permutation> matched;
    /// Left vertex set I with |N(I)| < |I| in the conflict graph.
    std::optional<Subset> certificate;

    [[nodiscard]] bool invertible() const noexcept { return matched.has_value(); }
};

inline constexpr std::size_t default_brute_force_limit = 8;

[[nodiscard]] ConflictGraph conflict_graph(const Collection& c);

/// Perfect matching of a square bipartite graph as a permutation, or a Hall
/// violator grown from the lowest-index unmatched left vertex.
[[nodiscard]] MatchingResult maximum_matching(const ConflictGraph& g);

/// Invertibility via perfect matching in the conflict graph. A returned
/// permutation is re-checked against every set; a failure there throws
/// std::logic_error since it can only come from a bug.
[[nodiscard]] MatchingResult decide_invertible(const Collection& c);

/// Lexicographically first permutation inverting every set, by enumerating
/// all n! permutations. Throws LimitExceeded when n > limit.
[[nodiscard]] std::optional<Permutation> brute_force_invertible(const Collection& c,
                                                                std::size_t limit = default_brute_force_limit);

/// For pairwise-disjoint sets: invertible iff every |S_i| <= n/2.
/// Throws std::invalid_argument if two sets intersect.
[[nodiscard]] bool check_disjoint_criterion(const Collection& c);

/// Three sets of equal size k are invertible iff
///   |S1&S2&S3| <= |~S1&~S2&~S3| <= |S1&S2&S3| + 3/2 (n - 2k),
/// evaluated in integers by doubling the right inequality.
/// Throws std::invalid_argument unless c holds three equal-size sets.
[[nodiscard]] bool check_triple(const Collection& c);

/// Half-size sets (n = 2k, all |S_i| = k) are invertible iff every Venn atom
/// has the same size as its complementary atom. Elements are bucketed by
/// membership signature, so at most n atoms are non-empty.
/// Throws std::invalid_argument if the size preconditions fail.
[[nodiscard]] bool check_halfsize_conditions(const Collection& c);

}  // namespace invpack
