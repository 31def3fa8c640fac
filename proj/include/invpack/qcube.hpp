#pragma once

// Square-blocking edge sets of the hypercube Q_n. Vertices are n-bit labels;
// an edge is (vertex, direction) stored with the direction bit clear.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "invpack/setcore.hpp"

namespace invpack {

inline constexpr std::size_t default_cube_limit = 14;

struct CubeEdge {
    std::uint64_t vertex = 0;
    std::size_t direction = 0;
    friend bool operator==(const CubeEdge&, const CubeEdge&) = default;
};

class CubeEdgeSet {
  public:
    /// Throws std::invalid_argument when n > 30.
    explicit CubeEdgeSet(std::size_t n);

    [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const { return bits_.cardinality(); }

    /// Either endpoint may be given; the edge is canonicalised.
    void insert(std::uint64_t vertex, std::size_t direction);
    void erase(std::uint64_t vertex, std::size_t direction);
    [[nodiscard]] bool contains(std::uint64_t vertex, std::size_t direction) const;

    /// Canonical edges ordered by (vertex, direction).
    [[nodiscard]] std::vector<CubeEdge> edges() const;

    friend bool operator==(const CubeEdgeSet&, const CubeEdgeSet&) = default;

  private:
    [[nodiscard]] std::size_t index(std::uint64_t vertex, std::size_t direction) const;
    std::size_t n_;
    Subset bits_;  // bit v * n + d
};

/// A 4-cycle: base has bits i and j clear, i < j.
struct Square {
    std::uint64_t base = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    [[nodiscard]] std::array<CubeEdge, 4> edges() const {
        return {CubeEdge{base, i}, CubeEdge{base | (std::uint64_t{1} << j), i}, CubeEdge{base, j},
                CubeEdge{base | (std::uint64_t{1} << i), j}};
    }
};

/// C(n, 2) 2^(n-2).
[[nodiscard]] std::uint64_t square_count(std::size_t n);

/// Visits every square once, by direction pair then base. Throws
/// std::invalid_argument for n < 2 and LimitExceeded above limit.
void for_each_square(std::size_t n, const std::function<void(const Square&)>& visit,
                     std::size_t limit = default_cube_limit);
[[nodiscard]] std::vector<Square> enumerate_squares(std::size_t n, std::size_t limit = default_cube_limit);

[[nodiscard]] bool is_square_blocking(const CubeEdgeSet& m, std::size_t limit = default_cube_limit);

/// M_2 is the single edge (00, 0). M_(k+1) places M_k on the bit-k = 0
/// half, a copy on the bit-k = 1 half, and the direction-k edges at a
/// minimum vertex cover of the Q_k edges left uncovered by both halves.
[[nodiscard]] CubeEdgeSet recursive_blocking_set(std::size_t n);

struct AssistedBlocking {
    CubeEdgeSet edges;
    /// |recursive_blocking_set(n)| - |edges|, never negative.
    std::size_t saved = 0;
    /// Steps in which the permuted copy beat the plain copy.
    std::size_t improved_steps = 0;
};

/// Like recursive_blocking_set, but the upper copy is M_k under a coordinate
/// permutation found by find_simple_permutation on the direction sets of
/// heavy vertices (at least k/2 incident M_k edges), each set being the
/// directions at that vertex whose edges are missing from M_k. Each step
/// keeps whichever copy yields the smaller cover. Requires n >= 3.
[[nodiscard]] AssistedBlocking inversion_assisted_blocking(std::size_t n);

/// Applies a permutation of the n coordinates to every edge.
[[nodiscard]] CubeEdgeSet permute_coordinates(const CubeEdgeSet& m, const Permutation& sigma);

/// "n" then one `<binary label, most significant bit first> <direction>` per line.
[[nodiscard]] CubeEdgeSet parse_cube_edges(std::string_view text);
[[nodiscard]] CubeEdgeSet read_cube_edges_file(const std::string& path);
[[nodiscard]] std::string serialize_cube_edges(const CubeEdgeSet& m);
[[nodiscard]] std::string vertex_label(std::uint64_t vertex, std::size_t n);

}  // namespace invpack
