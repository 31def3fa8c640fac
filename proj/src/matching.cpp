#include "invpack/matching.hpp"

#include <deque>
#include <limits>
#include <stdexcept>

namespace invpack {

BipartiteGraph::BipartiteGraph(std::size_t left_size, std::size_t right_size)
    : right_size_(right_size), adjacency_(left_size, Subset(right_size)) {}

void BipartiteGraph::set_neighbours(std::size_t u, Subset right_set) {
    if (right_set.ground_size() != right_size_) throw std::invalid_argument("neighbour set has wrong size");
    adjacency_.at(u) = std::move(right_set);
}

Subset BipartiteGraph::neighbourhood(const Subset& left_set) const {
    Subset out(right_size_);
    left_set.for_each([&](std::size_t u) { out |= adjacency_.at(u); });
    return out;
}

std::size_t BipartiteGraph::edge_count() const {
    std::size_t e = 0;
    for (const auto& a : adjacency_) e += a.cardinality();
    return e;
}

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

// Calls f(v) for every v in a & ~mask, re-reading mask words lazily so that
// vertices masked during the scan are skipped.
template <class F>
bool scan_unmasked(const Subset& a, const Subset& mask, F&& f) {
    const auto aw = a.words();
    const auto mw = mask.words();
    for (std::size_t w = 0; w < aw.size(); ++w) {
        Subset::word_type bits = aw[w] & ~mw[w];
        while (bits != 0) {
            const auto v = w * Subset::word_bits + static_cast<std::size_t>(std::countr_zero(bits));
            bits &= bits - 1;
            if (mask.contains(v)) continue;
            if (f(v)) return true;
        }
    }
    return false;
}

class HopcroftKarp {
  public:
    explicit HopcroftKarp(const BipartiteGraph& g)
        : g_(g), dist_(g.left_size(), kInf), dead_(g.right_size()) {
        m_.mate_left.assign(g.left_size(), npos);
        m_.mate_right.assign(g.right_size(), npos);
    }

    Matching run() {
        while (build_layers()) {
            dead_ = Subset(g_.right_size());
            for (std::size_t u = 0; u < g_.left_size(); ++u) {
                if (m_.mate_left[u] == npos && augment(u)) ++m_.cardinality;
            }
        }
        return std::move(m_);
    }

  private:
    bool build_layers() {
        std::deque<std::size_t> queue;
        for (std::size_t u = 0; u < g_.left_size(); ++u) {
            if (m_.mate_left[u] == npos) {
                dist_[u] = 0;
                queue.push_back(u);
            } else {
                dist_[u] = kInf;
            }
        }
        free_layer_ = kInf;
        Subset reached(g_.right_size());
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            if (dist_[u] >= free_layer_) continue;
            scan_unmasked(g_.neighbours(u), reached, [&](std::size_t v) {
                reached.insert(v);
                const std::size_t w = m_.mate_right[v];
                if (w == npos) {
                    if (free_layer_ == kInf) free_layer_ = dist_[u] + 1;
                } else if (dist_[w] == kInf) {
                    dist_[w] = dist_[u] + 1;
                    queue.push_back(w);
                }
                return false;
            });
        }
        return free_layer_ != kInf;
    }

    bool augment(std::size_t u) {
        const bool found = scan_unmasked(g_.neighbours(u), dead_, [&](std::size_t v) {
            const std::size_t w = m_.mate_right[v];
            // v is only on a shortest path through the next layer
            if (w == npos ? dist_[u] + 1 != free_layer_ : dist_[w] != dist_[u] + 1) return false;
            dead_.insert(v);
            const bool ok = w == npos || augment(w);
            if (ok) {
                m_.mate_left[u] = v;
                m_.mate_right[v] = u;
            }
            return ok;
        });
        if (!found) dist_[u] = kInf;
        return found;
    }

    const BipartiteGraph& g_;
    Matching m_;
    std::vector<std::size_t> dist_;
    Subset dead_;
    std::size_t free_layer_ = kInf;
};

// Left and right vertices reachable by alternating paths from `sources`.
std::pair<Subset, Subset> alternating_reach(const BipartiteGraph& g, const Matching& m, const Subset& sources) {
    Subset left = sources;
    Subset right(g.right_size());
    std::deque<std::size_t> queue;
    sources.for_each([&](std::size_t u) { queue.push_back(u); });
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        scan_unmasked(g.neighbours(u), right, [&](std::size_t v) {
            right.insert(v);
            const std::size_t w = m.mate_right[v];
            if (w == npos) throw std::logic_error("augmenting path found: matching is not maximum");
            if (!left.contains(w)) {
                left.insert(w);
                queue.push_back(w);
            }
            return false;
        });
    }
    return {std::move(left), std::move(right)};
}

}  // namespace

Matching hopcroft_karp(const BipartiteGraph& g) { return HopcroftKarp(g).run(); }

bool is_matching(const BipartiteGraph& g, const Matching& m) {
    if (m.mate_left.size() != g.left_size() || m.mate_right.size() != g.right_size()) return false;
    std::size_t count = 0;
    for (std::size_t u = 0; u < g.left_size(); ++u) {
        const std::size_t v = m.mate_left[u];
        if (v == npos) continue;
        if (v >= g.right_size() || !g.has_edge(u, v) || m.mate_right[v] != u) return false;
        ++count;
    }
    for (std::size_t v = 0; v < g.right_size(); ++v) {
        const std::size_t u = m.mate_right[v];
        if (u != npos && (u >= g.left_size() || m.mate_left[u] != v)) return false;
    }
    return count == m.cardinality;
}

Subset hall_violator(const BipartiteGraph& g, const Matching& m) {
    std::size_t root = npos;
    for (std::size_t u = 0; u < g.left_size(); ++u) {
        if (m.mate_left[u] == npos) {
            root = u;
            break;
        }
    }
    if (root == npos) throw std::invalid_argument("matching is left-perfect; no Hall violator exists");
    Subset sources(g.left_size());
    sources.insert(root);
    return alternating_reach(g, m, sources).first;
}

VertexCover minimum_vertex_cover(const BipartiteGraph& g, const Matching& m) {
    Subset free_left(g.left_size());
    for (std::size_t u = 0; u < g.left_size(); ++u) {
        if (m.mate_left[u] == npos) free_left.insert(u);
    }
    auto [z_left, z_right] = alternating_reach(g, m, free_left);
    return VertexCover{z_left.complement(), std::move(z_right)};
}

bool is_vertex_cover(const BipartiteGraph& g, const VertexCover& cover) {
    for (std::size_t u = 0; u < g.left_size(); ++u) {
        if (cover.left.contains(u)) continue;
        if (!g.neighbours(u).is_subset_of(cover.right)) return false;
    }
    return true;
}

}  // namespace invpack
