#pragma once

// Ground-set primitives shared by every module: bit-vector subsets of [0, n),
// permutations stored as image arrays, and ordered collections of subsets.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace invpack {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

/// A subset of the ground set [0, n), stored as a multi-word bit vector.
///
/// Bits at positions >= n are always zero, so word-wise comparisons and
/// population counts never see padding.
class Subset {
  public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Subset() = default;
    explicit Subset(std::size_t n);
    Subset(std::size_t n, std::initializer_list<std::size_t> elements);

    /// Throws std::out_of_range if an element is >= n.
    static Subset from_elements(std::size_t n, std::span<const std::size_t> elements);
    static Subset full(std::size_t n);

    [[nodiscard]] std::size_t ground_size() const noexcept { return n_; }
    [[nodiscard]] std::size_t cardinality() const noexcept;
    [[nodiscard]] bool empty() const noexcept;

    [[nodiscard]] bool contains(std::size_t x) const noexcept {
        return x < n_ && ((words_[x / word_bits] >> (x % word_bits)) & 1U) != 0;
    }
    void insert(std::size_t x);
    void erase(std::size_t x);

    [[nodiscard]] Subset complement() const;
    [[nodiscard]] bool intersects(const Subset& other) const;
    [[nodiscard]] std::size_t intersection_size(const Subset& other) const;
    [[nodiscard]] bool is_subset_of(const Subset& other) const;

    Subset& operator&=(const Subset& other);
    Subset& operator|=(const Subset& other);
    Subset& operator-=(const Subset& other);

    friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
    friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
    friend Subset operator-(Subset a, const Subset& b) { return a -= b; }

    /// Smallest element >= from, or npos.
    [[nodiscard]] std::size_t find_next(std::size_t from) const noexcept;
    [[nodiscard]] std::size_t find_first() const noexcept { return find_next(0); }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            word_type bits = words_[w];
            while (bits != 0) {
                f(w * word_bits + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    [[nodiscard]] std::vector<std::size_t> elements() const;
    [[nodiscard]] std::span<const word_type> words() const noexcept { return words_; }
    [[nodiscard]] std::span<word_type> mutable_words() noexcept { return words_; }

    friend bool operator==(const Subset&, const Subset&) = default;

    /// Lexicographic order on the sorted element lists (then ground size).
    friend std::strong_ordering lex_compare(const Subset& a, const Subset& b);

  private:
    void check_same_ground(const Subset& other) const;

    std::size_t n_ = 0;
    std::vector<word_type> words_;
};

/// Bijection on [0, n) stored as image[j] = pi(j).
class Permutation {
  public:
    Permutation() = default;
    /// Throws std::invalid_argument unless image is a bijection on [0, image.size()).
    explicit Permutation(std::vector<std::size_t> image);

    static Permutation identity(std::size_t n);
    static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);
    /// Product of the given disjoint 2-cycles; unlisted points are fixed.
    static Permutation from_pairs(std::size_t n,
                                  std::span<const std::pair<std::size_t, std::size_t>> pairs);

    [[nodiscard]] std::size_t size() const noexcept { return image_.size(); }
    [[nodiscard]] std::size_t operator[](std::size_t j) const { return image_[j]; }
    [[nodiscard]] std::span<const std::size_t> image() const noexcept { return image_; }

    /// floor(n/2) disjoint transpositions, plus one fixed point when n is odd.
    [[nodiscard]] bool is_simple() const noexcept { return simple_; }
    [[nodiscard]] Permutation inverse() const;

    friend bool operator==(const Permutation& a, const Permutation& b) {
        return a.image_ == b.image_;
    }

  private:
    std::vector<std::size_t> image_;
    bool simple_ = false;
};

/// Ground-set size plus an ordered list of subsets of [0, n).
class Collection {
  public:
    Collection() = default;
    explicit Collection(std::size_t n) : n_(n) {}
    /// Throws std::invalid_argument if any member has a different ground size.
    Collection(std::size_t n, std::vector<Subset> sets);

    [[nodiscard]] std::size_t ground_size() const noexcept { return n_; }
    [[nodiscard]] std::size_t size() const noexcept { return sets_.size(); }
    [[nodiscard]] bool empty() const noexcept { return sets_.empty(); }
    [[nodiscard]] const Subset& operator[](std::size_t i) const { return sets_[i]; }
    [[nodiscard]] const std::vector<Subset>& sets() const noexcept { return sets_; }

    void push_back(Subset s);

    [[nodiscard]] auto begin() const noexcept { return sets_.begin(); }
    [[nodiscard]] auto end() const noexcept { return sets_.end(); }

    friend bool operator==(const Collection&, const Collection&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<Subset> sets_;
};

[[nodiscard]] Subset complement(const Subset& s);
/// { p[x] : x in s }. Throws std::invalid_argument on size mismatch.
[[nodiscard]] Subset apply(const Permutation& p, const Subset& s);
/// True iff p(s) and s are disjoint. Throws std::invalid_argument on size mismatch.
[[nodiscard]] bool inverts(const Permutation& p, const Subset& s);
/// True iff p inverts every member of c.
[[nodiscard]] bool inverts_all(const Permutation& p, const Collection& c);
/// Number of members of c inverted by p.
[[nodiscard]] std::size_t count_inverted(const Permutation& p, const Collection& c);

// Text formats. Collections: first non-comment line is n, then one set per
// line as space-separated 0-based indices; '#' starts a comment line; blank
// lines are rejected. Permutations: one line of n images.

[[nodiscard]] Collection parse_collection(std::string_view text);
[[nodiscard]] Collection read_collection_file(const std::string& path);
/// Throws std::invalid_argument if c holds an empty set (not representable).
[[nodiscard]] std::string serialize_collection(const Collection& c);
[[nodiscard]] std::string format_set(const Subset& s);

[[nodiscard]] Permutation parse_permutation(std::string_view text);
[[nodiscard]] std::string serialize_permutation(const Permutation& p);

std::ostream& operator<<(std::ostream& os, const Subset& s);
std::ostream& operator<<(std::ostream& os, const Permutation& p);

}  // namespace invpack
