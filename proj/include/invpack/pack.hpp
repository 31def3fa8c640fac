#pragma once

// Packings with unbounded block sizes: families of equal-size blocks whose
// pairwise intersections stay below alpha * |block|.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invpack/exact.hpp"
#include "invpack/setcore.hpp"

namespace invpack {

struct PackingFamily {
    std::size_t n = 0;
    std::vector<Subset> blocks;
    ExactRational declared_alpha;
    /// block size / n, or 0 for an empty family.
    ExactRational achieved_c;

    [[nodiscard]] std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().cardinality(); }
    [[nodiscard]] Collection as_collection() const { return Collection(n, blocks); }
};

/// Builds a family from a collection, computing achieved_c from the first block.
[[nodiscard]] PackingFamily make_family(const Collection& c, const ExactRational& alpha);

/// Largest intersection allowed below alpha * block_size: ceil(alpha * b) - 1.
[[nodiscard]] std::int64_t max_allowed_intersection(const ExactRational& alpha, std::size_t block_size);

struct PackingReport {
    bool passed = false;
    std::uint64_t pairs_checked = 0;
    std::size_t max_intersection = 0;
    /// alpha * block size; every pairwise intersection must be strictly below.
    ExactRational threshold;
    /// First pair attaining the maximum intersection (or a size violation).
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
    std::string failure;
};

[[nodiscard]] PackingReport verify_packing(const PackingFamily& f);

/// Vertex count and (uniform) degree of the packing graph on cn-subsets of
/// [0, n), where two distinct subsets are adjacent iff they share at least
/// alpha * cn elements.
struct GraphStats {
    std::size_t n = 0;
    std::size_t cn_size = 0;
    ExactRational alpha;
    BigInt vertices;
    BigInt degree;
};

/// C(cn, i) * C(n - cn, cn - i): cn-subsets meeting a fixed one in exactly i points.
[[nodiscard]] BigInt intersection_class_size(std::size_t n, std::size_t cn_size, std::size_t i);

/// Throws std::invalid_argument unless 0 < cn_size <= n and alpha > 0. For
/// alpha > 1 no two distinct sets are adjacent and D = 0.
[[nodiscard]] GraphStats packing_graph_stats(std::size_t n, std::size_t cn_size, const ExactRational& alpha);

/// Summary of one recursion depth of the explicit construction, top first.
struct PackingLevel {
    std::size_t ground_requested = 0;
    std::size_t ground_used = 0;
    ExactRational alpha;
    enum class Kind { singletons, product, lifted } kind = Kind::singletons;
    std::size_t parts = 0;               // 2/alpha for product levels
    std::uint64_t sub_family_size = 0;   // size of each part's family
    std::uint64_t modulus = 0;           // prime q <= sub_family_size
    std::uint64_t family_size = 0;
    std::size_t block_size = 0;
    std::size_t intersection_bound = 0;  // proven max pairwise intersection
    std::string note;
};

struct StructuralReport {
    bool passed = true;
    std::size_t product_levels = 0;
    std::uint64_t part_pairs_exhaustive = 0;
    std::uint64_t part_pairs_algebraic = 0;
    std::string failure;
};

/// Recursive product construction, held symbolically so that families far
/// too large to list can still be sized, sampled, and checked.
///
/// For alpha = 1/k: when n * alpha <= 4 the family is the n singletons.
/// Otherwise the ground set is cut into 2k equal parts, each carrying the
/// construction for (n / 2k, alpha / 2). With q the largest prime <= the
/// part family size and q > 2k, block (l, m) takes sub-block l from part 0,
/// m from part 1 and (l + j m) mod q from part j >= 2. Distinct blocks then
/// share at most one whole sub-block, so intersections stay below
/// alpha * |block|. If no such prime exists the level falls back to the
/// larger of the n singletons and the part family itself.
class PackingConstruction {
  public:
    /// Throws std::invalid_argument unless alpha = 1/k for a positive integer k.
    static PackingConstruction build(std::size_t n, const ExactRational& alpha);

    [[nodiscard]] std::size_t ground_requested() const noexcept;
    [[nodiscard]] std::size_t ground_used() const noexcept;
    [[nodiscard]] const ExactRational& alpha() const noexcept;
    [[nodiscard]] std::uint64_t size() const noexcept;
    [[nodiscard]] std::size_t block_size() const noexcept;
    [[nodiscard]] std::size_t intersection_bound() const noexcept;
    /// intersection_bound() < alpha * block_size() at every level.
    [[nodiscard]] bool bound_within_threshold() const;

    [[nodiscard]] std::vector<PackingLevel> levels() const;

    /// Elements of block `index` (sorted, within [0, ground_used())).
    [[nodiscard]] std::vector<std::size_t> block_elements(std::uint64_t index) const;
    /// Sub-block index used by block `index` in each top-level part (empty
    /// for singleton or lifted tops).
    [[nodiscard]] std::vector<std::uint64_t> constituents(std::uint64_t index) const;
    /// Number of top-level parts and the width of each (0 when not a product).
    [[nodiscard]] std::pair<std::size_t, std::size_t> part_layout() const noexcept;

    /// For every product level and every pair of parts, checks that the map
    /// (l, m) -> (index in part j, index in part j') is injective: directly
    /// over all q^2 pairs when q^2 <= exhaustive_cap, otherwise through the
    /// determinant of the linear index maps modulo the prime q.
    [[nodiscard]] StructuralReport structural_check(std::uint64_t exhaustive_cap = std::uint64_t{1} << 16) const;

    /// Lists every block over ground size ground_requested(). Throws
    /// LimitExceeded when size() > max_blocks.
    [[nodiscard]] PackingFamily materialize(std::uint64_t max_blocks) const;

    struct Node;

  private:
    explicit PackingConstruction(std::shared_ptr<const Node> root, std::size_t requested);
    std::shared_ptr<const Node> root_;
    std::size_t requested_ = 0;
};

inline constexpr std::uint64_t default_materialize_limit = std::uint64_t{1} << 16;

/// Builds and lists the recursive packing; the result is verified pairwise
/// before returning (std::logic_error on failure).
[[nodiscard]] PackingFamily construct_packing(std::size_t n, const ExactRational& alpha,
                                              std::uint64_t max_blocks = default_materialize_limit);

/// Largest number of top-level parts in which two blocks coincide, over all
/// block pairs, for a family whose ground set is cut into `parts` runs of
/// `part_size` consecutive points.
[[nodiscard]] std::size_t max_shared_constituents(const PackingFamily& f, std::size_t parts, std::size_t part_size);

/// Keeps each cn-subset, in lexicographic order, that meets every kept block
/// in fewer than alpha * cn points. Throws LimitExceeded when C(n, cn) > budget.
[[nodiscard]] PackingFamily greedy_independent_set(std::size_t n, std::size_t cn_size, const ExactRational& alpha,
                                                   std::uint64_t budget);

/// Given even n, k < n/2 and k-subsets R_i of the last n/2 + k points
/// meeting pairwise in fewer than k/3 points, returns S_i = K + R_i with K
/// the first n/2 - k points. No three S_i are invertible; any two are.
/// rs may be expressed over [0, n) or over the n/2 + k points locally.
[[nodiscard]] Collection no_three_invertible_family(std::size_t n, std::size_t k, const PackingFamily& rs);

/// R-family for no_three_invertible_family by the greedy rule on the last
/// n/2 + k points (local indices), alpha = 1/3.
[[nodiscard]] PackingFamily no_three_rs_family(std::size_t n, std::size_t k, std::uint64_t budget = 1'000'000);

struct NoThreeReport {
    bool passed = true;
    std::uint64_t triples_checked = 0;
    std::uint64_t pairs_checked = 0;
    std::string failure;
};

/// Runs decide_invertible on every pair and triple (pairs must invert,
/// triples must not) and check_triple on every triple.
[[nodiscard]] NoThreeReport verify_no_three(const Collection& c);

[[nodiscard]] bool is_prime(std::uint64_t x);

}  // namespace invpack
