#include "invpack/pack.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "invpack/errors.hpp"
#include "invpack/invert.hpp"

namespace invpack {

PackingFamily make_family(const Collection& c, const ExactRational& alpha) {
    PackingFamily f;
    f.n = c.ground_size();
    f.blocks = c.sets();
    f.declared_alpha = alpha;
    f.achieved_c = (f.blocks.empty() || f.n == 0)
                       ? ExactRational(0)
                       : ExactRational(BigInt(f.block_size()), BigInt(f.n));
    return f;
}

std::int64_t max_allowed_intersection(const ExactRational& alpha, std::size_t block_size) {
    const ExactRational t = alpha * ExactRational(static_cast<std::int64_t>(block_size));
    return static_cast<std::int64_t>(t.ceil()) - 1;
}

PackingReport verify_packing(const PackingFamily& f) {
    PackingReport r;
    const std::size_t b = f.block_size();
    r.threshold = f.declared_alpha * ExactRational(static_cast<std::int64_t>(b));
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        if (f.blocks[i].ground_size() != f.n) {
            r.failure = "block " + std::to_string(i) + " has ground size " + std::to_string(f.blocks[i].ground_size());
            return r;
        }
        if (f.blocks[i].cardinality() != b) {
            r.failure = "block " + std::to_string(i) + " has size " + std::to_string(f.blocks[i].cardinality()) +
                        ", expected " + std::to_string(b);
            r.worst_pair = std::pair{std::size_t{0}, i};
            return r;
        }
    }
    const std::int64_t allowed = max_allowed_intersection(f.declared_alpha, b);
    bool duplicate = false;
    for (std::size_t i = 0; i < f.blocks.size(); ++i) {
        for (std::size_t j = i + 1; j < f.blocks.size(); ++j) {
            const std::size_t inter = f.blocks[i].intersection_size(f.blocks[j]);
            ++r.pairs_checked;
            if (!r.worst_pair || inter > r.max_intersection) {
                r.max_intersection = inter;
                r.worst_pair = std::pair{i, j};
            }
            if (inter == b && !duplicate) {
                duplicate = true;
                r.failure = "blocks " + std::to_string(i) + " and " + std::to_string(j) + " are identical";
            }
        }
    }
    if (duplicate) return r;
    if (r.worst_pair && static_cast<std::int64_t>(r.max_intersection) > allowed) {
        r.failure = "blocks " + std::to_string(r.worst_pair->first) + " and " + std::to_string(r.worst_pair->second) +
                    " share " + std::to_string(r.max_intersection) + " points, threshold " + r.threshold.str();
        return r;
    }
    r.passed = true;
    return r;
}

BigInt intersection_class_size(std::size_t n, std::size_t cn_size, std::size_t i) {
    if (i > cn_size || cn_size > n || cn_size - i > n - cn_size) return 0;
    return binomial(cn_size, i) * binomial(n - cn_size, cn_size - i);
}

GraphStats packing_graph_stats(std::size_t n, std::size_t cn_size, const ExactRational& alpha) {
    if (cn_size == 0 || cn_size > n) throw std::invalid_argument("need 0 < cn_size <= n");
    if (alpha <= ExactRational(0)) throw std::invalid_argument("need alpha > 0");
    GraphStats s{n, cn_size, alpha, binomial(n, cn_size), 0};
    const BigInt first = (alpha * ExactRational(static_cast<std::int64_t>(cn_size))).ceil();
    if (first > cn_size) return s;
    BigInt total = 0;
    for (auto i = static_cast<std::size_t>(first); i <= cn_size; ++i) total += intersection_class_size(n, cn_size, i);
    // the i = cn_size class is the vertex itself
    s.degree = total - 1;
    return s;
}

bool is_prime(std::uint64_t x) {
    if (x < 2) return false;
    if (x % 2 == 0) return x == 2;
    for (std::uint64_t d = 3; d <= x / d; d += 2) {
        if (x % d == 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Recursive construction
// ---------------------------------------------------------------------------

struct PackingConstruction::Node {
    PackingLevel::Kind kind = PackingLevel::Kind::singletons;
    std::size_t requested = 0;
    std::size_t ground = 0;
    ExactRational alpha;
    std::size_t block_size = 0;
    std::uint64_t size = 0;
    std::size_t bound = 0;
    std::size_t parts = 0;
    std::size_t stride = 0;
    std::uint64_t q = 0;
    std::shared_ptr<const Node> child;
    std::string note;

    [[nodiscard]] std::uint64_t index_in_part(std::uint64_t l, std::uint64_t m, std::size_t j) const {
        if (j == 0) return l;
        if (j == 1) return m;
        return (l + (j % q) * m) % q;
    }
};

namespace {

using Node = PackingConstruction::Node;

// q^2 must fit in 64 bits.
constexpr std::uint64_t kModulusCap = (std::uint64_t{1} << 32) - 1;

std::shared_ptr<const Node> singletons(std::size_t n, const ExactRational& alpha, std::string note) {
    auto node = std::make_shared<Node>();
    node->kind = PackingLevel::Kind::singletons;
    node->requested = n;
    node->ground = n;
    node->alpha = alpha;
    node->block_size = n == 0 ? 0 : 1;
    node->size = n;
    node->bound = 0;
    node->note = std::move(note);
    return node;
}

std::shared_ptr<const Node> build_node(std::size_t n, const ExactRational& alpha, std::uint64_t k) {
    if (alpha * ExactRational(static_cast<std::int64_t>(n)) <= ExactRational(4)) {
        return singletons(n, alpha, "base case");
    }
    const std::size_t parts = static_cast<std::size_t>(2 * k);
    auto child = build_node(n / parts, alpha / ExactRational(2), 2 * k);

    std::uint64_t q = std::min<std::uint64_t>(child->size, kModulusCap);
    while (q > parts && !is_prime(q)) --q;
    if (q <= parts) {
        const std::string why = "no prime q with " + std::to_string(parts) + " < q <= " + std::to_string(child->size);
        if (child->size > n) {
            auto node = std::make_shared<Node>(*child);
            node->kind = PackingLevel::Kind::lifted;
            node->requested = n;
            node->alpha = alpha;
            node->child = child;
            node->note = why + "; using the part family";
            return node;
        }
        return singletons(n, alpha, why + "; using singletons");
    }

    auto node = std::make_shared<Node>();
    node->kind = PackingLevel::Kind::product;
    node->requested = n;
    node->alpha = alpha;
    node->parts = parts;
    node->stride = child->ground;
    node->ground = parts * child->ground;
    node->q = q;
    node->size = q * q;
    node->block_size = parts * child->block_size;
    node->bound = child->block_size + (parts - 1) * child->bound;
    if (q != child->size) node->note = "modulus rounded from " + std::to_string(child->size) + " to prime " + std::to_string(q);
    node->child = std::move(child);
    if (static_cast<std::int64_t>(node->bound) > max_allowed_intersection(alpha, node->block_size)) {
        throw std::logic_error("product level exceeds its intersection threshold");
    }
    return node;
}

void collect_elements(const Node& node, std::uint64_t index, std::size_t offset, std::vector<std::size_t>& out) {
    switch (node.kind) {
        case PackingLevel::Kind::singletons:
            out.push_back(offset + static_cast<std::size_t>(index));
            return;
        case PackingLevel::Kind::lifted:
            collect_elements(*node.child, index, offset, out);
            return;
        case PackingLevel::Kind::product: {
            const std::uint64_t l = index / node.q;
            const std::uint64_t m = index % node.q;
            for (std::size_t j = 0; j < node.parts; ++j) {
                collect_elements(*node.child, node.index_in_part(l, m, j), offset + j * node.stride, out);
            }
            return;
        }
    }
}

}  // namespace

PackingConstruction::PackingConstruction(std::shared_ptr<const Node> root, std::size_t requested)
    : root_(std::move(root)), requested_(requested) {}

PackingConstruction PackingConstruction::build(std::size_t n, const ExactRational& alpha) {
    if (alpha <= ExactRational(0) || alpha.numerator() != 1) {
        throw std::invalid_argument("alpha must be 1/k for a positive integer k, got " + alpha.str());
    }
    const BigInt k = alpha.denominator();
    if (k > std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("1/alpha too large");
    return PackingConstruction(build_node(n, alpha, k.convert_to<std::uint64_t>()), n);
}

std::size_t PackingConstruction::ground_requested() const noexcept { return requested_; }
std::size_t PackingConstruction::ground_used() const noexcept { return root_->ground; }
const ExactRational& PackingConstruction::alpha() const noexcept { return root_->alpha; }
std::uint64_t PackingConstruction::size() const noexcept { return root_->size; }
std::size_t PackingConstruction::block_size() const noexcept { return root_->block_size; }
std::size_t PackingConstruction::intersection_bound() const noexcept { return root_->bound; }

bool PackingConstruction::bound_within_threshold() const {
    for (const Node* node = root_.get(); node != nullptr; node = node->child.get()) {
        if (node->size > 1 && static_cast<std::int64_t>(node->bound) > max_allowed_intersection(node->alpha, node->block_size)) {
            return false;
        }
    }
    return true;
}

std::vector<PackingLevel> PackingConstruction::levels() const {
    std::vector<PackingLevel> out;
    for (const Node* node = root_.get(); node != nullptr; node = node->child.get()) {
        PackingLevel lv;
        lv.ground_requested = node->requested;
        lv.ground_used = node->ground;
        lv.alpha = node->alpha;
        lv.kind = node->kind;
        lv.parts = node->parts;
        lv.sub_family_size = node->child ? node->child->size : 0;
        lv.modulus = node->q;
        lv.family_size = node->size;
        lv.block_size = node->block_size;
        lv.intersection_bound = node->bound;
        lv.note = node->note;
        out.push_back(std::move(lv));
        // a lifted level repeats its child's record below it
    }
    return out;
}

std::vector<std::size_t> PackingConstruction::block_elements(std::uint64_t index) const {
    if (index >= size()) throw std::out_of_range("block index out of range");
    std::vector<std::size_t> out;
    out.reserve(block_size());
    collect_elements(*root_, index, 0, out);
    return out;
}

std::vector<std::uint64_t> PackingConstruction::constituents(std::uint64_t index) const {
    if (index >= size()) throw std::out_of_range("block index out of range");
    std::vector<std::uint64_t> out;
    if (root_->kind != PackingLevel::Kind::product) return out;
    const std::uint64_t l = index / root_->q;
    const std::uint64_t m = index % root_->q;
    for (std::size_t j = 0; j < root_->parts; ++j) out.push_back(root_->index_in_part(l, m, j));
    return out;
}

std::pair<std::size_t, std::size_t> PackingConstruction::part_layout() const noexcept {
    if (root_->kind != PackingLevel::Kind::product) return {0, 0};
    return {root_->parts, root_->stride};
}

StructuralReport PackingConstruction::structural_check(std::uint64_t exhaustive_cap) const {
    StructuralReport r;
    for (const Node* node = root_.get(); node != nullptr; node = node->child.get()) {
        if (node->kind != PackingLevel::Kind::product) continue;
        ++r.product_levels;
        const std::uint64_t q = node->q;
        if (!is_prime(q) || q <= node->parts) {
            r.passed = false;
            r.failure = "modulus " + std::to_string(q) + " is not a prime above " + std::to_string(node->parts);
            return r;
        }
        const bool exhaustive = q <= exhaustive_cap / q;
        // one bit per (index in j, index in jj); small enough to stay in cache
        std::vector<std::uint64_t> seen;
        // index in part p moves by step(p) mod q as m increases
        auto step = [&](std::size_t p) -> std::uint64_t { return p == 0 ? 0 : p == 1 ? 1 : p % q; };
        for (std::size_t j = 0; j < node->parts; ++j) {
            for (std::size_t jj = j + 1; jj < node->parts; ++jj) {
                if (exhaustive) {
                    seen.assign(static_cast<std::size_t>((q * q + 63) / 64), 0);
                    const std::uint64_t sj = step(j), sjj = step(jj);
                    for (std::uint64_t l = 0; l < q; ++l) {
                        std::uint64_t a = node->index_in_part(l, 0, j);
                        std::uint64_t b = node->index_in_part(l, 0, jj);
                        for (std::uint64_t m = 0; m < q; ++m) {
                            const std::uint64_t key = a * q + b;
                            auto& word = seen[static_cast<std::size_t>(key >> 6)];
                            const std::uint64_t bit = std::uint64_t{1} << (key & 63);
                            if (word & bit) {
                                r.passed = false;
                                r.failure = "two blocks share sub-blocks in parts " + std::to_string(j) + " and " +
                                            std::to_string(jj) + " (q = " + std::to_string(q) + ")";
                                return r;
                            }
                            word |= bit;
                            a += sj;
                            if (a >= q) a -= q;
                            b += sjj;
                            if (b >= q) b -= q;
                        }
                    }
                    ++r.part_pairs_exhaustive;
                } else {
                    // part j uses l*x_j + m*y_j with (x, y) = (1,0), (0,1), (1,j)
                    auto row = [&](std::size_t p) -> std::pair<std::uint64_t, std::uint64_t> {
                        if (p == 0) return {1, 0};
                        if (p == 1) return {0, 1};
                        return {1, p % q};
                    };
                    const auto [x1, y1] = row(j);
                    const auto [x2, y2] = row(jj);
                    const std::uint64_t det = (x1 * y2 % q + q - (y1 * x2) % q) % q;
                    if (det == 0) {
                        r.passed = false;
                        r.failure = "singular index maps for parts " + std::to_string(j) + " and " + std::to_string(jj);
                        return r;
                    }
                    ++r.part_pairs_algebraic;
                }
            }
        }
    }
    return r;
}

PackingFamily PackingConstruction::materialize(std::uint64_t max_blocks) const {
    if (size() > max_blocks) {
        throw LimitExceeded("family has " + std::to_string(size()) + " blocks; limit is " + std::to_string(max_blocks));
    }
    PackingFamily f;
    f.n = requested_;
    f.declared_alpha = alpha();
    f.blocks.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t i = 0; i < size(); ++i) {
        const auto elems = block_elements(i);
        f.blocks.push_back(Subset::from_elements(requested_, elems));
    }
    f.achieved_c = (f.blocks.empty() || f.n == 0) ? ExactRational(0)
                                                  : ExactRational(BigInt(block_size()), BigInt(f.n));
    return f;
}

PackingFamily construct_packing(std::size_t n, const ExactRational& alpha, std::uint64_t max_blocks) {
    const auto tree = PackingConstruction::build(n, alpha);
    if (!tree.bound_within_threshold()) throw std::logic_error("construction exceeds its intersection threshold");
    auto family = tree.materialize(max_blocks);
    const auto report = verify_packing(family);
    if (!report.passed) throw std::logic_error("constructed packing failed verification: " + report.failure);
    return family;
}

std::size_t max_shared_constituents(const PackingFamily& f, std::size_t parts, std::size_t part_size) {
    // restriction of each block to each part, as element lists
    std::vector<std::vector<std::vector<std::size_t>>> pieces(f.blocks.size(), std::vector<std::vector<std::size_t>>(parts));
    for (std::size_t b = 0; b < f.blocks.size(); ++b) {
        f.blocks[b].for_each([&](std::size_t x) {
            const std::size_t p = x / part_size;
            if (p < parts) pieces[b][p].push_back(x);
        });
    }
    std::size_t worst = 0;
    for (std::size_t a = 0; a < f.blocks.size(); ++a) {
        for (std::size_t b = a + 1; b < f.blocks.size(); ++b) {
            std::size_t shared = 0;
            for (std::size_t p = 0; p < parts; ++p) {
                if (!pieces[a][p].empty() && pieces[a][p] == pieces[b][p]) ++shared;
            }
            worst = std::max(worst, shared);
        }
    }
    return worst;
}

PackingFamily greedy_independent_set(std::size_t n, std::size_t cn_size, const ExactRational& alpha,
                                     std::uint64_t budget) {
    if (cn_size == 0 || cn_size > n) throw std::invalid_argument("need 0 < cn_size <= n");
    if (alpha <= ExactRational(0)) throw std::invalid_argument("need alpha > 0");
    if (binomial(n, cn_size) > budget) {
        throw LimitExceeded("C(" + std::to_string(n) + ", " + std::to_string(cn_size) + ") exceeds budget " +
                            std::to_string(budget));
    }
    const std::int64_t allowed = max_allowed_intersection(alpha, cn_size);
    PackingFamily f;
    f.n = n;
    f.declared_alpha = alpha;
    std::vector<std::size_t> idx(cn_size);
    for (std::size_t i = 0; i < cn_size; ++i) idx[i] = i;
    while (true) {
        const Subset candidate = Subset::from_elements(n, idx);
        const bool ok = std::all_of(f.blocks.begin(), f.blocks.end(), [&](const Subset& kept) {
            return static_cast<std::int64_t>(kept.intersection_size(candidate)) <= allowed;
        });
        if (ok) f.blocks.push_back(candidate);
        // next combination in lexicographic order
        std::size_t i = cn_size;
        while (i > 0 && idx[i - 1] == n - cn_size + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < cn_size; ++j) idx[j] = idx[j - 1] + 1;
    }
    f.achieved_c = ExactRational(BigInt(cn_size), BigInt(n));
    return f;
}

Collection no_three_invertible_family(std::size_t n, std::size_t k, const PackingFamily& rs) {
    if (n % 2 != 0) throw std::invalid_argument("n must be even");
    if (k == 0 || 2 * k >= n) throw std::invalid_argument("need 0 < k < n/2");
    const std::size_t core = n / 2 - k;
    std::size_t shift = 0;
    if (rs.n == n / 2 + k) {
        shift = core;
    } else if (rs.n != n) {
        throw std::invalid_argument("R-family ground size must be n or n/2 + k");
    }
    std::vector<Subset> rs_global;
    for (const auto& r : rs.blocks) {
        if (r.ground_size() != rs.n) throw std::invalid_argument("R-family block has wrong ground size");
        if (r.cardinality() != k) throw std::invalid_argument("R-family blocks must have size k");
        Subset g(n);
        bool in_range = true;
        r.for_each([&](std::size_t x) {
            if (x + shift < core) in_range = false;
            else g.insert(x + shift);
        });
        if (!in_range) throw std::invalid_argument("R-family block meets the first n/2 - k points");
        rs_global.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < rs_global.size(); ++i) {
        for (std::size_t j = i + 1; j < rs_global.size(); ++j) {
            if (3 * rs_global[i].intersection_size(rs_global[j]) >= k) {
                throw std::invalid_argument("R-family blocks " + std::to_string(i) + " and " + std::to_string(j) +
                                            " meet in at least k/3 points");
            }
        }
    }
    Subset kernel(n);
    for (std::size_t x = 0; x < core; ++x) kernel.insert(x);
    Collection out(n);
    for (auto& r : rs_global) out.push_back(kernel | r);
    return out;
}

PackingFamily no_three_rs_family(std::size_t n, std::size_t k, std::uint64_t budget) {
    if (n % 2 != 0) throw std::invalid_argument("n must be even");
    if (k == 0 || 2 * k >= n) throw std::invalid_argument("need 0 < k < n/2");
    return greedy_independent_set(n / 2 + k, k, ExactRational(BigInt(1), BigInt(3)), budget);
}

NoThreeReport verify_no_three(const Collection& c) {
    NoThreeReport r;
    const std::size_t m = c.size();
    auto sub = [&](std::initializer_list<std::size_t> idx) {
        Collection s(c.ground_size());
        for (auto i : idx) s.push_back(c[i]);
        return s;
    };
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            ++r.pairs_checked;
            if (!decide_invertible(sub({i, j})).invertible()) {
                r.passed = false;
                r.failure = "pair (" + std::to_string(i) + ", " + std::to_string(j) + ") is not invertible";
                return r;
            }
            for (std::size_t l = j + 1; l < m; ++l) {
                ++r.triples_checked;
                const auto t = sub({i, j, l});
                if (decide_invertible(t).invertible() || check_triple(t)) {
                    r.passed = false;
                    r.failure = "triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(l) +
                                ") is invertible";
                    return r;
                }
            }
        }
    }
    return r;
}

}  // namespace invpack
