// Acceptance gate. Each criterion prints exactly one PASS/FAIL line with its
// measured values; the exit status is non-zero if any selected criterion
// fails. Tolerances and time limits are fixed here, not tuned to results.

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "invpack/bounds.hpp"
#include "invpack/invert.hpp"
#include "invpack/kappa.hpp"
#include "invpack/pack.hpp"
#include "invpack/qcube.hpp"
#include "support.hpp"

using namespace invpack;
using oracle::Mask;

namespace {

constexpr std::uint64_t seed = 20240611;

struct Outcome {
    bool passed = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double time_limit_s;  // 0 when unbounded
    std::function<Outcome()> run;
};

ExactRational frac(std::int64_t p, std::int64_t q) { return ExactRational(BigInt(p), BigInt(q)); }

Collection collection_of(std::size_t n, const std::vector<Mask>& sets) { return oracle::to_collection(n, sets); }

bool verdicts_agree(const Collection& c) {
    return decide_invertible(c).invertible() == brute_force_invertible(c).has_value();
}

// 1. matching verdict = brute force
Outcome matching_equivalence() {
    std::size_t grid = 0, discrepancies = 0;
    // multisets of m masks: order of the sets is the symmetry removed
    for (std::size_t n = 1; n <= 6; ++n) {
        const Mask top = Mask{1} << n;
        for (std::size_t m = 1; m <= 3; ++m) {
            std::vector<Mask> idx(m, 0);
            while (true) {
                ++grid;
                if (!verdicts_agree(collection_of(n, idx))) ++discrepancies;
                std::size_t pos = m;
                while (pos > 0 && idx[pos - 1] == top - 1) --pos;
                if (pos == 0) break;
                const Mask v = idx[pos - 1] + 1;
                for (std::size_t j = pos - 1; j < m; ++j) idx[j] = v;
            }
        }
    }
    std::mt19937_64 rng(seed);
    std::size_t random = 0, yes = 0;
    for (; random < 1000; ++random) {
        const std::size_t n = 1 + rng() % 8;
        const std::size_t m = 1 + rng() % 5;
        std::uniform_int_distribution<Mask> pick(0, (Mask{1} << n) - 1);
        std::vector<Mask> sets(m);
        for (auto& s : sets) s = pick(rng);
        const Collection c = collection_of(n, sets);
        const bool fast = decide_invertible(c).invertible();
        yes += fast ? 1 : 0;
        if (fast != brute_force_invertible(c).has_value()) ++discrepancies;
    }
    return {discrepancies == 0, fmt::format("{} grid + {} random instances ({} invertible), {} discrepancies", grid,
                                            random, yes, discrepancies)};
}

// 2. triple condition = brute force
Outcome triple_condition() {
    std::mt19937_64 rng(seed + 2);
    std::size_t discrepancies = 0, yes = 0;
    const std::size_t trials = 2000;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = 4 + 2 * (rng() % 3);
        const std::size_t k = 1 + rng() % (n / 2 + 1);
        const Collection c = collection_of(n, oracle::random_sets_of_size(rng, n, 3, k));
        const bool cond = check_triple(c);
        yes += cond ? 1 : 0;
        if (cond != brute_force_invertible(c).has_value()) ++discrepancies;
    }
    return {discrepancies == 0,
            fmt::format("{} triples ({} invertible), {} discrepancies", trials, yes, discrepancies)};
}

// 3. sigma, lambda and double counting
Outcome counting_formulas() {
    std::size_t mismatches = 0, checks = 0;
    for (std::size_t n = 0; n <= 8; ++n) {
        std::vector<std::size_t> inverting(n + 1, 0);
        std::size_t simple = 0;
        oracle::for_each_permutation(n, [&](const std::vector<int>& p) {
            if (!oracle::is_simple(p)) return;
            ++simple;
            for (std::size_t i = 0; i <= n; ++i) {
                const Mask s = (Mask{1} << i) - 1;
                if ((oracle::image_mask(p, s) & s) == 0) ++inverting[i];
            }
        });
        ++checks;
        if (sigma(n) != simple) ++mismatches;
        for (std::size_t i = 0; i <= n; ++i) {
            ++checks;
            if (lambda_simple(n, i) != inverting[i]) ++mismatches;
        }
    }
    std::mt19937_64 rng(seed + 3);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 7;
        const auto sets = oracle::random_sets(rng, n, 1 + rng() % 10);
        std::size_t total = 0;
        oracle::for_each_permutation(n, [&](const std::vector<int>& p) {
            if (oracle::is_simple(p)) total += oracle::inverted_by(p, sets);
        });
        const SizeProfile prof = SizeProfile::of(collection_of(n, sets));
        BigInt expected = 0;
        for (std::size_t i = 1; i <= prof.max_size(); ++i) expected += prof.count(i) * lambda_simple(n, i);
        ++checks;
        if (expected != total) ++mismatches;
    }
    return {mismatches == 0, fmt::format("{} exact comparisons, {} mismatches", checks, mismatches)};
}

// 4. derandomised search meets the averaging bound
Outcome derandomisation() {
    std::mt19937_64 rng(seed + 4);
    std::size_t below_bound = 0, above_optimum = 0, small = 0, total_slack = 0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 1 + rng() % 20;
        const auto sets = oracle::random_sets(rng, n, 1 + rng() % 30);
        const Collection c = collection_of(n, sets);
        const auto r = find_simple_permutation(c);
        const std::size_t verified = count_inverted(r.permutation, c);
        if (!r.permutation.is_simple() || verified != r.inverted || BigInt(verified) < r.bound.ceil()) ++below_bound;
        total_slack += verified - static_cast<std::size_t>(r.bound.ceil());
        if (n <= 8) {
            ++small;
            if (verified > exhaustive_kappa(c, true).count) ++above_optimum;
        }
    }
    return {below_bound == 0 && above_optimum == 0,
            fmt::format("500 collections: {} below ceil(bound), {} of {} above the exhaustive optimum, "
                        "mean slack {:.2f}",
                        below_bound, above_optimum, small, total_slack / 500.0)};
}

// 5. full profile identity
Outcome full_profile() {
    std::size_t failures = 0;
    for (std::size_t n = 0; n <= 40; ++n) {
        if (kappa_lower_bound(SizeProfile::full(n)) != ExactRational(power(BigInt(3), n / 2) - 1)) ++failures;
    }
    return {failures == 0, fmt::format("n = 0..40, {} mismatches", failures)};
}

const std::vector<ExactRational>& sweep_alphas() {
    static const std::vector<ExactRational> a{ExactRational(1), frac(1, 2), frac(1, 3), frac(1, 4)};
    return a;
}

// 6. packing construction
Outcome packing_construction() {
    const PackingFamily f = construct_packing(28, frac(1, 2));
    const auto r = verify_packing(f);
    const bool exact = f.blocks.size() == 49 && f.block_size() == 4 && r.passed && r.max_intersection == 1;
    std::size_t built = 0, structural_failures = 0, pair_checks = 0;
    for (const auto& a : sweep_alphas()) {
        for (std::size_t n = 1; n <= 2000; ++n) {
            const auto tree = PackingConstruction::build(n, a);
            ++built;
            const auto s = tree.structural_check();
            pair_checks += s.part_pairs_exhaustive + s.part_pairs_algebraic;
            if (!s.passed || !tree.bound_within_threshold()) ++structural_failures;
        }
    }
    return {exact && structural_failures == 0,
            fmt::format("n=28 alpha=1/2: {} blocks of size {}, max intersection {}, verify {}; "
                        "{} constructions, {} part-pair checks, {} structural failures",
                        f.blocks.size(), f.block_size(), r.max_intersection, r.passed ? "passed" : "FAILED", built,
                        pair_checks, structural_failures)};
}

// 7. no-three family
Outcome no_three() {
    std::size_t families = 0, bad_pairs = 0, bad_triples = 0, exceptions = 0, triples = 0;
    auto check = [&](std::size_t n, std::size_t k) {
        try {
            const Collection c = no_three_invertible_family(n, k, no_three_rs_family(n, k));
            ++families;
            const std::size_t m = c.size();
            for (std::size_t a = 0; a < m; ++a) {
                for (std::size_t b = a + 1; b < m; ++b) {
                    Collection two(n);
                    two.push_back(c[a]);
                    two.push_back(c[b]);
                    if (!decide_invertible(two).invertible()) ++bad_pairs;
                    for (std::size_t d = b + 1; d < m; ++d) {
                        Collection three = two;
                        three.push_back(c[d]);
                        ++triples;
                        if (decide_invertible(three).invertible()) ++bad_triples;
                    }
                }
            }
        } catch (const std::exception&) {
            ++exceptions;
        }
    };
    check(12, 3);
    for (std::size_t n = 4; n <= 16; n += 2) {
        for (std::size_t k = 1; 2 * k < n; ++k) check(n, k);
    }
    return {bad_pairs == 0 && bad_triples == 0 && exceptions == 0,
            fmt::format("{} families, {} triples: {} invertible triples, {} non-invertible pairs, {} exceptions",
                        families, triples, bad_triples, bad_pairs, exceptions)};
}

// 8. numerics against fixed reference values
Outcome reference_numerics() {
    const double alpha = 1.0 / 3.0;
    const double c_star = optimal_c(alpha);
    const double t_base = lower_bound_T(c_star, alpha).base;
    const double u1 = upper_bound_entropy(0.0825, alpha).base;
    const double u2 = upper_bound_entropy(0.1476, alpha).base;
    const bool a = std::abs(c_star - 0.082508) <= 1e-5;
    const bool b = std::abs(t_base - 1.0245) <= 5e-4;
    const bool c = std::abs(u1 - 1.0655) <= 5e-4;
    const bool d = std::abs(u2 - 1.0766) <= 5e-4;
    auto mark = [](bool ok) { return ok ? "ok" : "MISS"; };
    return {a && b && c && d,
            fmt::format("c* = {:.7f} vs 0.082508 +- 1e-5 [{}]; T base {:.5f} vs 1.0245 [{}]; "
                        "upper(0.0825) {:.5f} vs 1.0655 [{}]; upper(0.1476) {:.5f} vs 1.0766 [{}]",
                        c_star, mark(a), t_base, mark(b), u1, mark(c), u2, mark(d))};
}

// 9. degree accounting against the explicit graph
Outcome degree_accounting() {
    const auto s = packing_graph_stats(8, 2, frac(1, 2));
    std::vector<Mask> vertices;
    for (Mask v = 0; v < 256; ++v) {
        if (oracle::popcount(v) == 2) vertices.push_back(v);
    }
    // adjacent when the intersection reaches alpha * cn = 1
    std::size_t min_deg = vertices.size(), max_deg = 0;
    for (Mask v : vertices) {
        std::size_t d = 0;
        for (Mask w : vertices) d += (w != v && oracle::popcount(v & w) >= 1) ? 1 : 0;
        min_deg = std::min(min_deg, d);
        max_deg = std::max(max_deg, d);
    }
    const bool ok = s.vertices == 28 && s.degree == 12 && vertices.size() == 28 && min_deg == 12 && max_deg == 12;
    return {ok, fmt::format("N = {}, D = {}; explicit graph: {} vertices, degrees {}..{}", s.vertices.str(),
                            s.degree.str(), vertices.size(), min_deg, max_deg)};
}

// independent of the library's square enumeration
bool blocks_every_square(const CubeEdgeSet& m) {
    const std::size_t n = m.dimension();
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if ((v >> i & 1U) || (v >> j & 1U)) continue;
                const std::uint64_t vi = v | std::uint64_t{1} << i;
                const std::uint64_t vj = v | std::uint64_t{1} << j;
                if (!m.contains(v, i) && !m.contains(v, j) && !m.contains(vi, j) && !m.contains(vj, i)) return false;
            }
        }
    }
    return true;
}

// 10. hypercube
Outcome hypercube() {
    bool ok = true;
    std::string sizes, savings;
    for (std::size_t n = 2; n <= 7; ++n) {
        const auto m = recursive_blocking_set(n);
        ok = ok && blocks_every_square(m) && is_square_blocking(m) && m.size() <= (n - 1) << (n - 2);
        if (n == 2) ok = ok && m.size() == 1;
        sizes += fmt::format("{}{}", n == 2 ? "" : ",", m.size());
        if (n >= 3) {
            const auto a = inversion_assisted_blocking(n);
            ok = ok && a.edges.size() <= m.size() && blocks_every_square(a.edges);
            savings += fmt::format("{}{}", n == 3 ? "" : ",", m.size() - a.edges.size());
        }
    }
    return {ok, fmt::format("|M_n| for n=2..7: {}; assisted savings n=3..7: {}", sizes, savings)};
}

// 11. size-squaring recurrence and bound consistency
Outcome recurrence_and_grid() {
    std::size_t product_levels = 0, recurrence_failures = 0;
    for (const auto& a : sweep_alphas()) {
        for (std::size_t n = 1; n <= 2000; ++n) {
            const auto levels = PackingConstruction::build(n, a).levels();
            for (std::size_t l = 0; l + 1 < levels.size(); ++l) {
                if (levels[l].kind != PackingLevel::Kind::product) continue;
                ++product_levels;
                const std::uint64_t q = levels[l].modulus;
                const std::uint64_t below = levels[l + 1].family_size;
                if (levels[l].family_size != q * q || q > below || !is_prime(q) || q <= levels[l].parts) {
                    ++recurrence_failures;
                }
            }
        }
    }
    std::size_t violations = 0;
    for (int i = 0; i < 50; ++i) {
        const double c = 0.01 + (0.33 - 0.01) * i / 49.0;
        if (lower_bound_T(c, 1.0 / 3.0).log_per_n > upper_bound_entropy(c, 1.0 / 3.0).log_per_n) ++violations;
    }
    return {recurrence_failures == 0 && violations == 0,
            fmt::format("{} product levels, {} recurrence failures; 50-point grid, {} violations", product_levels,
                        recurrence_failures, violations)};
}

std::vector<Criterion> criteria() {
    return {
        {1, "matching-oracle equivalence", 60, matching_equivalence},
        {2, "triple condition", 60, triple_condition},
        {3, "counting formulas", 0, counting_formulas},
        {4, "derandomisation guarantee", 300, derandomisation},
        {5, "full-profile identity", 0, full_profile},
        {6, "packing construction", 30, packing_construction},
        {7, "no-three family", 0, no_three},
        {8, "reference numerics", 1, reference_numerics},
        {9, "degree accounting", 0, degree_accounting},
        {10, "hypercube blocking", 120, hypercube},
        {11, "recurrence and bound grid", 0, recurrence_and_grid},
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    int only = 0;
    app.add_option("--only", only, "run a single criterion")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    for (const auto& c : criteria()) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit_s == 0 || secs < c.time_limit_s;
        const bool ok = o.passed && in_time;
        failed += ok ? 0 : 1;
        const std::string limit = c.time_limit_s == 0 ? "" : fmt::format(", limit {:g} s", c.time_limit_s);
        fmt::print("{} {:>2} {}: {} ({:.2f} s{}{})\n", ok ? "PASS" : "FAIL", c.id, c.title, o.detail, secs, limit,
                   in_time ? "" : ", OVER TIME");
    }
    return failed == 0 ? 0 : 1;
}
