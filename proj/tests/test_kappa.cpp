#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

#include "invpack/errors.hpp"
#include "invpack/kappa.hpp"
#include "support.hpp"

using namespace invpack;
using oracle::Mask;

namespace {

std::size_t count_simple(std::size_t n) {
    std::size_t k = 0;
    oracle::for_each_permutation(n, [&](const std::vector<int>& p) { k += oracle::is_simple(p) ? 1 : 0; });
    return k;
}

// simple permutations of n points inverting the set s
std::size_t count_simple_inverting(std::size_t n, Mask s) {
    std::size_t k = 0;
    oracle::for_each_permutation(n, [&](const std::vector<int>& p) {
        if (oracle::is_simple(p) && (oracle::image_mask(p, s) & s) == 0) ++k;
    });
    return k;
}

std::vector<Mask> all_small_sets(std::size_t n, std::size_t max_size) {
    std::vector<Mask> out;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        if (oracle::popcount(s) <= max_size) out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_SUITE("kappa") {

TEST_CASE("sigma and lambda examples") {
    CHECK(sigma(0) == 1);
    CHECK(sigma(2) == 1);
    CHECK(sigma(4) == 3);
    CHECK(sigma(5) == 15);
    CHECK(sigma(6) == 15);
    CHECK(lambda_simple(4, 1) == 3);
    CHECK(lambda_simple(4, 2) == 2);
    CHECK(lambda_simple(6, 3) == 6);
    CHECK(lambda_simple(5, 3) == 0);
    CHECK(lambda_simple(6, 0) == sigma(6));
}

TEST_CASE("sigma counts simple permutations") {
    for (std::size_t n = 0; n <= 8; ++n) CHECK(sigma(n) == count_simple(n));
}

TEST_CASE("lambda counts simple permutations inverting any fixed set") {
    for (std::size_t n = 1; n <= 7; ++n) {
        for (Mask s = 1; s < (Mask{1} << n); ++s) {
            CHECK(lambda_simple(n, oracle::popcount(s)) == count_simple_inverting(n, s));
        }
    }
}

TEST_CASE("size profiles tally empty and oversized sets apart") {
    const Collection c = parse_collection("5\n0\n1 2\n0 1 2\n3\n");
    const SizeProfile p = SizeProfile::of(c);
    CHECK(p.max_size() == 2);
    CHECK(p.count(1) == 2);
    CHECK(p.count(2) == 1);
    CHECK(p.oversized_sets() == 1);
    CHECK_THROWS_AS((void)p.count(3), std::out_of_range);
    CHECK_THROWS_AS((void)p.count(0), std::out_of_range);
}

TEST_CASE("averaging bound examples") {
    SizeProfile p(4);
    p.set_count(1, 4);
    p.set_count(2, 6);
    CHECK(kappa_lower_bound(p) == ExactRational(8));
    SizeProfile one(2);
    one.set_count(1, 1);
    CHECK(kappa_lower_bound(one) == ExactRational(1));
    CHECK(kappa_lower_bound(SizeProfile(7)) == ExactRational(0));
}

TEST_CASE("averaging bound equals sum m_i lambda / sigma") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + rng() % 30;
        SizeProfile p(n);
        BigInt sum = 0;
        for (std::size_t i = 1; i <= n / 2; ++i) {
            const BigInt m = static_cast<long long>(rng() % 50);
            p.set_count(i, m);
            sum += m * lambda_simple(n, i);
        }
        CHECK(kappa_lower_bound(p) == ExactRational(sum, sigma(n)));
    }
}

TEST_CASE("full profile gives 3^floor(n/2) - 1") {
    for (std::size_t n = 1; n <= 40; ++n) {
        CHECK(kappa_lower_bound(SizeProfile::full(n)) == ExactRational(power(BigInt(3), n / 2) - 1));
    }
}

TEST_CASE("simple permutation enumeration is complete and duplicate-free") {
    for (std::size_t n = 0; n <= 8; ++n) {
        std::set<std::vector<std::size_t>> seen;
        for_each_simple_permutation(n, [&](const Permutation& p) {
            CHECK(p.is_simple());
            seen.insert(std::vector<std::size_t>(p.image().begin(), p.image().end()));
        });
        CHECK(BigInt(seen.size()) == sigma(n));
    }
}

TEST_CASE("sum over simple permutations of inverted counts equals sum of lambdas") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng() % 7;
        const auto sets = oracle::random_sets(rng, n, rng() % 8);
        std::size_t total = 0;
        oracle::for_each_permutation(n, [&](const std::vector<int>& p) {
            if (oracle::is_simple(p)) total += oracle::inverted_by(p, sets);
        });
        BigInt expected = 0;
        for (Mask s : sets) expected += lambda_simple(n, oracle::popcount(s));
        CHECK(BigInt(total) == expected);
    }
}

TEST_CASE("derandomised search examples") {
    const std::size_t n = 4;
    const Collection all = oracle::to_collection(n, all_small_sets(n, 2));
    const auto r = find_simple_permutation(all);
    CHECK(r.inverted >= 8);
    CHECK(r.bound == ExactRational(8));
    CHECK(exhaustive_kappa(all, true).count == 8);

    const auto swap = find_simple_permutation(parse_collection("2\n0\n"));
    CHECK(swap.permutation == Permutation({1, 0}));
    CHECK(swap.inverted == 1);

    const auto big = find_simple_permutation(parse_collection("4\n0 1 2\n0\n"));
    CHECK(big.inverted == 1);
}

TEST_CASE("derandomised search meets the bound and never loses expectation") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 120; ++t) {
        const std::size_t n = 1 + rng() % 8;
        const auto sets = oracle::random_sets(rng, n, rng() % 12);
        const Collection c = oracle::to_collection(n, sets);
        const auto r = find_simple_permutation(c);
        CHECK(r.permutation.is_simple());
        CHECK(r.inverted == count_inverted(r.permutation, c));
        CHECK(BigInt(r.inverted) >= r.bound.ceil());
        CHECK(r.expectations.front() == r.bound);
        CHECK(r.expectations.back() == ExactRational(static_cast<std::int64_t>(r.inverted)));
        for (std::size_t i = 1; i < r.expectations.size(); ++i) CHECK(r.expectations[i - 1] <= r.expectations[i]);
        CHECK(r.inverted <= oracle::best_count(n, sets, true));
    }
}

TEST_CASE("exhaustive search matches the oracle and respects its cap") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng() % 6;
        const auto sets = oracle::random_sets(rng, n, rng() % 6);
        const Collection c = oracle::to_collection(n, sets);
        const auto simple = exhaustive_kappa(c, true);
        const auto any = exhaustive_kappa(c, false);
        CHECK(simple.count == oracle::best_count(n, sets, true));
        CHECK(any.count == oracle::best_count(n, sets, false));
        CHECK(any.count >= simple.count);
        CHECK(count_inverted(any.permutation, c) == any.count);
    }
    CHECK(exhaustive_kappa(Collection(3), false).count == 0);
    CHECK_THROWS_AS((void)exhaustive_kappa(Collection(9), true), LimitExceeded);
}

}
