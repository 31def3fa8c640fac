#pragma once

// Bipartite maximum matching on bit-vector adjacency, plus the two
// certificates a maximum matching yields: a Hall violator when the matching
// is not left-perfect, and a König minimum vertex cover.

#include <cstddef>
#include <vector>

#include "invpack/setcore.hpp"

namespace invpack {

/// Bipartite graph with left vertices [0, left_size) and right vertices
/// [0, right_size). adjacency[u] is the set of right neighbours of u.
class BipartiteGraph {
  public:
    BipartiteGraph() = default;
    BipartiteGraph(std::size_t left_size, std::size_t right_size);

    [[nodiscard]] std::size_t left_size() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t right_size() const noexcept { return right_size_; }

    void add_edge(std::size_t u, std::size_t v) { adjacency_.at(u).insert(v); }
    [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const { return adjacency_.at(u).contains(v); }

    [[nodiscard]] const Subset& neighbours(std::size_t u) const { return adjacency_.at(u); }
    void set_neighbours(std::size_t u, Subset right_set);

    /// Union of the neighbourhoods of a left vertex set.
    [[nodiscard]] Subset neighbourhood(const Subset& left_set) const;

    [[nodiscard]] std::size_t edge_count() const;

  private:
    std::size_t right_size_ = 0;
    std::vector<Subset> adjacency_;
};

struct Matching {
    std::vector<std::size_t> mate_left;   // right partner of each left vertex, or npos
    std::vector<std::size_t> mate_right;  // left partner of each right vertex, or npos
    std::size_t cardinality = 0;

    [[nodiscard]] bool left_perfect() const noexcept { return cardinality == mate_left.size(); }
};

/// Maximum-cardinality matching by Hopcroft-Karp phases: a BFS builds the
/// layered graph from all free left vertices, then a DFS finds a maximal set
/// of vertex-disjoint shortest augmenting paths. Neighbour scans are
/// word-parallel over the adjacency bit vectors.
[[nodiscard]] Matching hopcroft_karp(const BipartiteGraph& g);

/// Checks that m is a valid matching of g (edges exist, mates consistent).
[[nodiscard]] bool is_matching(const BipartiteGraph& g, const Matching& m);

/// Left vertices reachable by alternating paths from the lowest-index free
/// left vertex. For a maximum matching this set I has |N(I)| = |I| - 1.
/// Throws std::invalid_argument if m is left-perfect.
[[nodiscard]] Subset hall_violator(const BipartiteGraph& g, const Matching& m);

struct VertexCover {
    Subset left;
    Subset right;
    [[nodiscard]] std::size_t size() const { return left.cardinality() + right.cardinality(); }
};

/// König cover from a maximum matching: with Z the vertices alternating-
/// reachable from free left vertices, the cover is (L \ Z) + (R & Z).
[[nodiscard]] VertexCover minimum_vertex_cover(const BipartiteGraph& g, const Matching& m);

[[nodiscard]] bool is_vertex_cover(const BipartiteGraph& g, const VertexCover& cover);

}  // namespace invpack
