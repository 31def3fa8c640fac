#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <bit>
#include <set>

#include "invpack/errors.hpp"
#include "invpack/qcube.hpp"

using namespace invpack;

namespace {

// 4-cycles of Q_n found by walking the graph: vertex sets of closed walks
// v0 v1 v2 v3 with distinct vertices.
std::size_t brute_square_count(std::size_t n) {
    const std::uint64_t size = std::uint64_t{1} << n;
    std::set<std::vector<std::uint64_t>> cycles;
    for (std::uint64_t a = 0; a < size; ++a) {
        for (std::size_t d1 = 0; d1 < n; ++d1) {
            const std::uint64_t b = a ^ (std::uint64_t{1} << d1);
            for (std::size_t d2 = 0; d2 < n; ++d2) {
                const std::uint64_t c = b ^ (std::uint64_t{1} << d2);
                if (c == a) continue;
                for (std::size_t d3 = 0; d3 < n; ++d3) {
                    const std::uint64_t d = c ^ (std::uint64_t{1} << d3);
                    if (d == b || d == a) continue;
                    if (std::popcount(d ^ a) != 1) continue;
                    std::vector<std::uint64_t> key{a, b, c, d};
                    std::sort(key.begin(), key.end());
                    cycles.insert(key);
                }
            }
        }
    }
    return cycles.size();
}

std::uint64_t binom2(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace

TEST_SUITE("qcube") {

TEST_CASE("square counts") {
    CHECK(enumerate_squares(2).size() == 1);
    CHECK(enumerate_squares(3).size() == 6);
    CHECK(enumerate_squares(4).size() == 24);
    for (std::size_t n = 2; n <= 5; ++n) {
        CHECK(square_count(n) == binom2(n) << (n - 2));
        CHECK(enumerate_squares(n).size() == brute_square_count(n));
    }
    CHECK_THROWS_AS((void)enumerate_squares(1), std::invalid_argument);
    CHECK_THROWS_AS((void)enumerate_squares(15), LimitExceeded);
}

TEST_CASE("squares are real 4-cycles") {
    for (const auto& s : enumerate_squares(4)) {
        CHECK(s.i < s.j);
        CHECK((s.base >> s.i & 1U) == 0);
        CHECK((s.base >> s.j & 1U) == 0);
        for (const auto& e : s.edges()) CHECK((e.vertex >> e.direction & 1U) == 0);
    }
}

TEST_CASE("edge sets canonicalise either endpoint") {
    CubeEdgeSet m(3);
    m.insert(0b101, 0);
    CHECK(m.contains(0b100, 0));
    CHECK(m.contains(0b101, 0));
    CHECK(m.size() == 1);
    CHECK(m.edges().front() == CubeEdge{0b100, 0});
    m.erase(0b100, 0);
    CHECK(m.size() == 0);
    CHECK_THROWS_AS(m.insert(8, 0), std::out_of_range);
    CHECK_THROWS_AS(m.insert(0, 3), std::out_of_range);
}

TEST_CASE("blocking examples") {
    for (std::uint64_t v = 0; v < 4; ++v) {
        for (std::size_t d = 0; d < 2; ++d) {
            CubeEdgeSet m(2);
            m.insert(v, d);
            CHECK(is_square_blocking(m));
        }
    }
    CHECK_FALSE(is_square_blocking(CubeEdgeSet(3)));
}

TEST_CASE("three edges can block Q_3 and two cannot") {
    // each edge lies in n - 1 = 2 squares, and Q_3 has 6
    std::vector<CubeEdge> all;
    for (std::uint64_t v = 0; v < 8; ++v) {
        for (std::size_t d = 0; d < 3; ++d) {
            if ((v >> d & 1U) == 0) all.push_back({v, d});
        }
    }
    REQUIRE(all.size() == 12);
    std::size_t blocking_triples = 0;
    for (std::size_t a = 0; a < 12; ++a) {
        for (std::size_t b = a + 1; b < 12; ++b) {
            CubeEdgeSet two(3);
            two.insert(all[a].vertex, all[a].direction);
            two.insert(all[b].vertex, all[b].direction);
            CHECK_FALSE(is_square_blocking(two));
            for (std::size_t c = b + 1; c < 12; ++c) {
                CubeEdgeSet m = two;
                m.insert(all[c].vertex, all[c].direction);
                blocking_triples += is_square_blocking(m) ? 1 : 0;
            }
        }
    }
    CHECK(blocking_triples > 0);
}

TEST_CASE("recursive construction") {
    CHECK(recursive_blocking_set(2).size() == 1);
    CHECK(recursive_blocking_set(2).edges().front() == CubeEdge{0, 0});
    const auto m3 = recursive_blocking_set(3);
    CHECK(m3.size() >= 3);
    CHECK(m3.size() <= 4);
    for (std::size_t n = 2; n <= 9; ++n) {
        const auto m = recursive_blocking_set(n);
        CHECK(is_square_blocking(m));
        CHECK(m.size() <= (n - 1) << (n - 2));
        // every edge blocks at most n - 1 squares
        CHECK(m.size() * (n - 1) >= square_count(n));
    }
    CHECK_THROWS_AS((void)recursive_blocking_set(1), std::invalid_argument);
}

TEST_CASE("recursion keeps the lower half intact") {
    const auto m4 = recursive_blocking_set(4);
    const auto m5 = recursive_blocking_set(5);
    for (const auto& e : m4.edges()) {
        CHECK(m5.contains(e.vertex, e.direction));
        CHECK(m5.contains(e.vertex | 16, e.direction));
    }
}

TEST_CASE("inversion-assisted construction is never worse") {
    for (std::size_t n = 3; n <= 8; ++n) {
        const auto plain = recursive_blocking_set(n);
        const auto a = inversion_assisted_blocking(n);
        CHECK(is_square_blocking(a.edges));
        CHECK(a.edges.size() <= plain.size());
        CHECK(a.saved == plain.size() - a.edges.size());
    }
    CHECK_THROWS_AS((void)inversion_assisted_blocking(2), std::invalid_argument);
}

TEST_CASE("coordinate permutations preserve blocking") {
    const auto m = recursive_blocking_set(5);
    const auto p = permute_coordinates(m, Permutation({1, 0, 3, 2, 4}));
    CHECK(p.size() == m.size());
    CHECK(is_square_blocking(p));
    CHECK(permute_coordinates(m, Permutation::identity(5)) == m);
}

TEST_CASE("edge file text") {
    const auto m = recursive_blocking_set(4);
    const std::string text = serialize_cube_edges(m);
    CHECK(parse_cube_edges(text) == m);
    CHECK(vertex_label(0b0110, 4) == "0110");
    const auto parsed = parse_cube_edges("# q3\n3\n100 0\n001 2\n");
    CHECK(parsed.contains(0b100, 0));
    CHECK(parsed.contains(0b001, 2));
    CHECK(serialize_cube_edges(parsed) == "3\n001 2\n100 0\n");
    CHECK_THROWS_AS((void)parse_cube_edges("3\n10 0\n"), FormatError);
    CHECK_THROWS_AS((void)parse_cube_edges("3\n102 0\n"), FormatError);
    CHECK_THROWS_AS((void)parse_cube_edges("3\n100 3\n"), FormatError);
    CHECK_THROWS_AS((void)parse_cube_edges("3\n100\n"), FormatError);
    CHECK_THROWS_AS((void)parse_cube_edges(""), FormatError);
    CHECK_THROWS_AS((void)parse_cube_edges("x\n"), FormatError);
}

}
