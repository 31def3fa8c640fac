#include "invpack/qcube.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "invpack/errors.hpp"
#include "invpack/kappa.hpp"
#include "invpack/matching.hpp"

namespace invpack {

namespace {

constexpr std::uint64_t bit(std::size_t d) { return std::uint64_t{1} << d; }

void check_limit(std::size_t n, std::size_t limit) {
    if (n > limit) {
        throw LimitExceeded("hypercube dimension " + std::to_string(n) + " exceeds limit " + std::to_string(limit));
    }
}

}  // namespace

CubeEdgeSet::CubeEdgeSet(std::size_t n) : n_(n), bits_(0) {
    if (n > 30) throw std::invalid_argument("hypercube dimension above 30");
    bits_ = Subset(n * (std::size_t{1} << n));
}

std::size_t CubeEdgeSet::index(std::uint64_t vertex, std::size_t direction) const {
    if (direction >= n_ || vertex >= bit(n_)) throw std::out_of_range("edge outside Q_" + std::to_string(n_));
    return static_cast<std::size_t>(vertex & ~bit(direction)) * n_ + direction;
}

void CubeEdgeSet::insert(std::uint64_t vertex, std::size_t direction) { bits_.insert(index(vertex, direction)); }
void CubeEdgeSet::erase(std::uint64_t vertex, std::size_t direction) { bits_.erase(index(vertex, direction)); }
bool CubeEdgeSet::contains(std::uint64_t vertex, std::size_t direction) const {
    return bits_.contains(index(vertex, direction));
}

std::vector<CubeEdge> CubeEdgeSet::edges() const {
    std::vector<CubeEdge> out;
    out.reserve(size());
    bits_.for_each([&](std::size_t x) { out.push_back(CubeEdge{x / n_, x % n_}); });
    return out;
}

std::uint64_t square_count(std::size_t n) {
    if (n < 2) return 0;
    return static_cast<std::uint64_t>(n * (n - 1) / 2) * bit(n - 2);
}

void for_each_square(std::size_t n, const std::function<void(const Square&)>& visit, std::size_t limit) {
    if (n < 2) throw std::invalid_argument("squares need n >= 2");
    check_limit(n, limit);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::uint64_t mask = bit(i) | bit(j);
            for (std::uint64_t v = 0; v < bit(n); ++v) {
                if ((v & mask) == 0) visit(Square{v, i, j});
            }
        }
    }
}

std::vector<Square> enumerate_squares(std::size_t n, std::size_t limit) {
    std::vector<Square> out;
    for_each_square(n, [&](const Square& s) { out.push_back(s); }, limit);
    return out;
}

bool is_square_blocking(const CubeEdgeSet& m, std::size_t limit) {
    const std::size_t n = m.dimension();
    check_limit(n, limit);
    if (n < 2) return true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const std::uint64_t mask = bit(i) | bit(j);
            for (std::uint64_t v = 0; v < bit(n); ++v) {
                if ((v & mask) != 0) continue;
                if (!m.contains(v, i) && !m.contains(v | bit(j), i) && !m.contains(v, j) && !m.contains(v | bit(i), j)) {
                    return false;
                }
            }
        }
    }
    return true;
}

CubeEdgeSet permute_coordinates(const CubeEdgeSet& m, const Permutation& sigma) {
    const std::size_t n = m.dimension();
    if (sigma.size() != n) throw std::invalid_argument("coordinate permutation has the wrong size");
    CubeEdgeSet out(n);
    for (const auto& e : m.edges()) {
        std::uint64_t w = 0;
        for (std::size_t d = 0; d < n; ++d) {
            if (e.vertex & bit(d)) w |= bit(sigma[d]);
        }
        out.insert(w, sigma[e.direction]);
    }
    return out;
}

namespace {

// lower on the bit-k = 0 half, upper on the bit-k = 1 half, and direction-k
// edges at a minimum cover of the Q_k edges missing from both.
CubeEdgeSet extend(const CubeEdgeSet& lower, const CubeEdgeSet& upper) {
    const std::size_t k = lower.dimension();
    CubeEdgeSet out(k + 1);
    for (const auto& e : lower.edges()) out.insert(e.vertex, e.direction);
    for (const auto& e : upper.edges()) out.insert(e.vertex | bit(k), e.direction);

    // even-weight vertices on the left, odd on the right; v >> 1 indexes both
    const std::size_t half = static_cast<std::size_t>(bit(k) >> 1);
    BipartiteGraph residual(half, half);
    for (std::uint64_t v = 0; v < bit(k); ++v) {
        for (std::size_t d = 0; d < k; ++d) {
            if ((v & bit(d)) != 0 || lower.contains(v, d) || upper.contains(v, d)) continue;
            const std::uint64_t w = v | bit(d);
            const bool v_even = std::popcount(v) % 2 == 0;
            const std::uint64_t even = v_even ? v : w;
            const std::uint64_t odd = v_even ? w : v;
            residual.add_edge(static_cast<std::size_t>(even >> 1), static_cast<std::size_t>(odd >> 1));
        }
    }
    const VertexCover cover = minimum_vertex_cover(residual, hopcroft_karp(residual));
    auto lift = [&](std::size_t idx, bool even) {
        const std::uint64_t v = static_cast<std::uint64_t>(idx) << 1;
        const bool low_even = std::popcount(v) % 2 == 0;
        out.insert(low_even == even ? v : v | 1, k);
    };
    cover.left.for_each([&](std::size_t idx) { lift(idx, true); });
    cover.right.for_each([&](std::size_t idx) { lift(idx, false); });
    return out;
}

CubeEdgeSet base_set() {
    CubeEdgeSet m(2);
    m.insert(0, 0);
    return m;
}

void require_dimension(std::size_t n, std::size_t minimum) {
    if (n < minimum) throw std::invalid_argument("hypercube construction needs n >= " + std::to_string(minimum));
    check_limit(n, default_cube_limit);
}

}  // namespace

CubeEdgeSet recursive_blocking_set(std::size_t n) {
    require_dimension(n, 2);
    CubeEdgeSet m = base_set();
    while (m.dimension() < n) m = extend(m, m);
    if (!is_square_blocking(m)) throw std::logic_error("recursive construction is not square-blocking");
    return m;
}

AssistedBlocking inversion_assisted_blocking(std::size_t n) {
    require_dimension(n, 3);
    CubeEdgeSet m = base_set();
    std::size_t improved = 0;
    while (m.dimension() < n) {
        const std::size_t k = m.dimension();
        CubeEdgeSet best = extend(m, m);

        Collection directions(k);
        for (std::uint64_t v = 0; v < bit(k); ++v) {
            Subset missing(k);
            for (std::size_t d = 0; d < k; ++d) {
                if (!m.contains(v, d)) missing.insert(d);
            }
            if (2 * (k - missing.cardinality()) >= k && !missing.empty()) directions.push_back(std::move(missing));
        }
        if (directions.size() > 0) {
            const auto sigma = find_simple_permutation(directions).permutation;
            CubeEdgeSet assisted = extend(m, permute_coordinates(m, sigma));
            if (assisted.size() < best.size()) {
                best = std::move(assisted);
                ++improved;
            }
        }
        m = std::move(best);
    }
    const CubeEdgeSet plain = recursive_blocking_set(n);
    AssistedBlocking out{m, 0, improved};
    if (plain.size() < m.size()) {
        out.edges = plain;
    } else {
        out.saved = plain.size() - m.size();
    }
    if (!is_square_blocking(out.edges)) throw std::logic_error("assisted construction is not square-blocking");
    return out;
}

std::string vertex_label(std::uint64_t vertex, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t d = 0; d < n; ++d) {
        if (vertex & bit(d)) s[n - 1 - d] = '1';
    }
    return s;
}

CubeEdgeSet parse_cube_edges(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::optional<CubeEdgeSet> out;
    auto fail = [&](const std::string& what) { throw FormatError("line " + std::to_string(line_no) + ": " + what); };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first) || first.front() == '#') continue;
        std::string extra;
        if (!out) {
            std::size_t n = 0;
            const auto [p, ec] = std::from_chars(first.data(), first.data() + first.size(), n);
            if (ec != std::errc{} || p != first.data() + first.size() || (fields >> extra)) fail("header must be the single integer n");
            if (n > default_cube_limit) fail("dimension " + std::to_string(n) + " exceeds limit");
            out.emplace(n);
            continue;
        }
        const std::size_t n = out->dimension();
        if (first.size() != n || first.find_first_not_of("01") != std::string::npos) {
            fail("vertex label must be " + std::to_string(n) + " binary digits");
        }
        std::string dir_text;
        if (!(fields >> dir_text) || (fields >> extra)) fail("expected '<label> <direction>'");
        std::size_t d = 0;
        const auto [p, ec] = std::from_chars(dir_text.data(), dir_text.data() + dir_text.size(), d);
        if (ec != std::errc{} || p != dir_text.data() + dir_text.size() || d >= n) fail("direction must be in [0, n)");
        std::uint64_t v = 0;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (first[pos] == '1') v |= bit(n - 1 - pos);
        }
        out->insert(v, d);
    }
    if (!out) throw FormatError("missing header line with dimension n");
    return std::move(*out);
}

CubeEdgeSet read_cube_edges_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cube_edges(buf.str());
}

std::string serialize_cube_edges(const CubeEdgeSet& m) {
    std::string out = std::to_string(m.dimension()) + "\n";
    for (const auto& e : m.edges()) out += vertex_label(e.vertex, m.dimension()) + " " + std::to_string(e.direction) + "\n";
    return out;
}

}  // namespace invpack
