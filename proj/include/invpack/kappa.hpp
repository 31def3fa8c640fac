#pragma once

// Exact counting over simple permutations (floor(n/2) disjoint transpositions)
// and a derandomised search that attains the averaging lower bound on the
// number of sets a single permutation can invert.

#include <cstddef>
#include <functional>
#include <vector>

#include "invpack/exact.hpp"
#include "invpack/setcore.hpp"

namespace invpack {

/// Number of sets of each cardinality 1..floor(n/2). Empty and oversized
/// (> floor(n/2)) sets are tallied separately and excluded from the bound.
class SizeProfile {
  public:
    explicit SizeProfile(std::size_t n);

    static SizeProfile of(const Collection& c);
    /// m_i = C(n, i) for every i.
    static SizeProfile full(std::size_t n);

    [[nodiscard]] std::size_t ground_size() const noexcept { return n_; }
    [[nodiscard]] std::size_t max_size() const noexcept { return n_ / 2; }
    /// Throws std::out_of_range unless 1 <= i <= floor(n/2).
    [[nodiscard]] const BigInt& count(std::size_t i) const;
    void set_count(std::size_t i, BigInt m);

    [[nodiscard]] std::size_t empty_sets() const noexcept { return empty_; }
    [[nodiscard]] std::size_t oversized_sets() const noexcept { return oversized_; }

  private:
    std::size_t n_;
    std::vector<BigInt> counts_;
    std::size_t empty_ = 0;
    std::size_t oversized_ = 0;
};

/// n! / (2^floor(n/2) floor(n/2)!): the number of simple permutations of n points.
[[nodiscard]] BigInt sigma(std::size_t n);

/// Simple permutations of n points inverting a fixed i-subset:
/// (n-i)! / (2^floor(n/2-i) floor(n/2-i)!), and 0 when i > floor(n/2).
[[nodiscard]] BigInt lambda_simple(std::size_t n, std::size_t i);

/// (floor(n/2)! / n!) * sum_i m_i 2^i (n-i)! / floor(n/2-i)!
[[nodiscard]] ExactRational kappa_lower_bound(const SizeProfile& p);

struct SimplePermutationResult {
    Permutation permutation;
    std::size_t inverted = 0;
    /// kappa_lower_bound of the input's size profile.
    ExactRational bound;
    /// Conditional expectation after each fixing step; starts with the
    /// unconditioned average and ends with the realised count.
    std::vector<ExactRational> expectations;
};

/// Method of conditional expectations over uniformly random simple
/// permutations. Each step pairs the lowest free point with the partner (or,
/// for odd n, the fixed-point slot, ranked after every real partner) that
/// maximises the expected number of inverted sets; ties go to the lowest
/// index. The expectation is asserted never to decrease, so the result
/// inverts at least ceil(kappa_lower_bound) sets.
[[nodiscard]] SimplePermutationResult find_simple_permutation(const Collection& c);

struct KappaResult {
    Permutation permutation;
    std::size_t count = 0;
};

inline constexpr std::size_t default_kappa_limit = 8;

/// Visits every simple permutation of n points: the lowest free point is
/// paired with each later point in turn, or (odd n) fixed last.
void for_each_simple_permutation(std::size_t n, const std::function<void(const Permutation&)>& visit);

/// First maximiser of the inverted count over all permutations (or only the
/// simple ones). Throws LimitExceeded when n > limit.
[[nodiscard]] KappaResult exhaustive_kappa(const Collection& c, bool simple_only,
                                           std::size_t limit = default_kappa_limit);

}  // namespace invpack
