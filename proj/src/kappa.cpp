#include "invpack/kappa.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include "invpack/errors.hpp"

namespace invpack {

SizeProfile::SizeProfile(std::size_t n) : n_(n), counts_(n / 2, BigInt(0)) {}

SizeProfile SizeProfile::of(const Collection& c) {
    SizeProfile p(c.ground_size());
    for (const auto& s : c) {
        const std::size_t i = s.cardinality();
        if (i == 0) ++p.empty_;
        else if (i > p.max_size()) ++p.oversized_;
        else p.counts_[i - 1] += 1;
    }
    return p;
}

SizeProfile SizeProfile::full(std::size_t n) {
    SizeProfile p(n);
    for (std::size_t i = 1; i <= p.max_size(); ++i) p.counts_[i - 1] = binomial(n, i);
    return p;
}

const BigInt& SizeProfile::count(std::size_t i) const {
    if (i == 0 || i > max_size()) throw std::out_of_range("profile index " + std::to_string(i) + " outside 1..floor(n/2)");
    return counts_[i - 1];
}

void SizeProfile::set_count(std::size_t i, BigInt m) {
    if (i == 0 || i > max_size()) throw std::out_of_range("profile index " + std::to_string(i) + " outside 1..floor(n/2)");
    if (m < 0) throw std::invalid_argument("profile counts must be non-negative");
    counts_[i - 1] = std::move(m);
}

BigInt sigma(std::size_t n) {
    const std::size_t h = n / 2;
    return factorial(n) / (power(BigInt(2), h) * factorial(h));
}

BigInt lambda_simple(std::size_t n, std::size_t i) {
    if (i > n / 2) return 0;
    // floor(n/2 - i) == floor(n/2) - i for integral i
    const std::size_t h = n / 2 - i;
    return factorial(n - i) / (power(BigInt(2), h) * factorial(h));
}

ExactRational kappa_lower_bound(const SizeProfile& p) {
    const std::size_t n = p.ground_size();
    const std::size_t h = p.max_size();
    BigInt sum = 0;
    for (std::size_t i = 1; i <= h; ++i) {
        if (p.count(i) == 0) continue;
        sum += p.count(i) * power(BigInt(2), i) * factorial(n - i) / factorial(h - i);
    }
    return ExactRational(factorial(h) * sum, factorial(n));
}

namespace {

// lambda_simple(r, s) for all r <= n, s <= r/2; zero elsewhere.
class LambdaTable {
  public:
    explicit LambdaTable(std::size_t n) : rows_(n + 1) {
        for (std::size_t r = 0; r <= n; ++r) {
            rows_[r].resize(r / 2 + 1);
            for (std::size_t s = 0; s <= r / 2; ++s) rows_[r][s] = lambda_simple(r, s);
        }
    }
    [[nodiscard]] const BigInt& operator()(std::size_t r, std::size_t s) const {
        static const BigInt zero = 0;
        return s < rows_[r].size() ? rows_[r][s] : zero;
    }
    [[nodiscard]] const BigInt& sigma_of(std::size_t r) const { return rows_[r][0]; }

  private:
    std::vector<std::vector<BigInt>> rows_;
};

}  // namespace

SimplePermutationResult find_simple_permutation(const Collection& c) {
    const std::size_t n = c.ground_size();
    const std::size_t m = c.size();
    const LambdaTable lambda(n);

    std::vector<bool> alive(m, true);
    std::vector<std::size_t> free_in(m);  // |S ∩ free points| per set
    for (std::size_t k = 0; k < m; ++k) free_in[k] = c[k].cardinality();
    Subset free_points = Subset::full(n);
    std::size_t remaining = n;

    // Expected inverted count under a uniform simple completion of the
    // remaining points, given per-set free sizes.
    auto expectation = [&](std::size_t r, auto&& size_after) {
        std::vector<std::size_t> histogram(r / 2 + 1, 0);
        for (std::size_t k = 0; k < m; ++k) {
            if (!alive[k]) continue;
            const std::size_t s = size_after(k);
            if (s != npos && s <= r / 2) ++histogram[s];
        }
        BigInt num = 0;
        for (std::size_t s = 0; s < histogram.size(); ++s) {
            if (histogram[s] != 0) num += lambda(r, s) * histogram[s];
        }
        return ExactRational(num, lambda.sigma_of(r));
    };

    SimplePermutationResult result;
    result.bound = kappa_lower_bound(SizeProfile::of(c));
    ExactRational current = expectation(n, [&](std::size_t k) { return free_in[k]; });
    result.expectations.push_back(current);

    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), std::size_t{0});

    while (remaining > 0) {
        const std::size_t a = free_points.find_first();
        std::size_t best_partner = npos;  // npos stands for the fixed-point slot
        std::optional<ExactRational> best;

        for (std::size_t b = free_points.find_next(a + 1); b != npos; b = free_points.find_next(b + 1)) {
            ExactRational e = expectation(remaining - 2, [&](std::size_t k) -> std::size_t {
                const bool has_a = c[k].contains(a);
                const bool has_b = c[k].contains(b);
                if (has_a && has_b) return npos;
                return free_in[k] - static_cast<std::size_t>(has_a) - static_cast<std::size_t>(has_b);
            });
            if (!best || e > *best) {
                best = std::move(e);
                best_partner = b;
            }
        }
        if (remaining % 2 == 1) {
            ExactRational e = expectation(remaining - 1, [&](std::size_t k) -> std::size_t {
                return c[k].contains(a) ? npos : free_in[k];
            });
            if (!best || e > *best) {
                best = std::move(e);
                best_partner = npos;
            }
        }
        if (*best < current) {
            throw std::logic_error("conditional expectation decreased at point " + std::to_string(a));
        }

        free_points.erase(a);
        for (std::size_t k = 0; k < m; ++k) {
            if (!alive[k]) continue;
            const bool has_a = c[k].contains(a);
            const bool has_b = best_partner != npos && c[k].contains(best_partner);
            if (has_a && (best_partner == npos || has_b)) alive[k] = false;
            free_in[k] -= static_cast<std::size_t>(has_a) + static_cast<std::size_t>(has_b);
        }
        if (best_partner == npos) {
            remaining -= 1;
        } else {
            free_points.erase(best_partner);
            image[a] = best_partner;
            image[best_partner] = a;
            remaining -= 2;
        }
        current = std::move(*best);
        result.expectations.push_back(current);
    }

    result.permutation = Permutation(std::move(image));
    result.inverted = count_inverted(result.permutation, c);
    if (!result.permutation.is_simple() || ExactRational(static_cast<std::int64_t>(result.inverted)) != current) {
        throw std::logic_error("derandomised search ended inconsistently with its final expectation");
    }
    if (BigInt(result.inverted) < result.bound.ceil()) {
        throw std::logic_error("derandomised search fell below the averaging bound");
    }
    return result;
}

namespace {

void visit_simple(std::vector<std::size_t>& image, std::vector<bool>& used, std::size_t remaining, bool fixed_open,
                  const std::function<void(const Permutation&)>& visit) {
    if (remaining == 0) {
        visit(Permutation(image));
        return;
    }
    const std::size_t n = image.size();
    std::size_t a = 0;
    while (used[a]) ++a;
    used[a] = true;
    for (std::size_t b = a + 1; b < n; ++b) {
        if (used[b]) continue;
        used[b] = true;
        image[a] = b;
        image[b] = a;
        visit_simple(image, used, remaining - 2, fixed_open, visit);
        image[a] = a;
        image[b] = b;
        used[b] = false;
    }
    if (fixed_open) visit_simple(image, used, remaining - 1, false, visit);
    used[a] = false;
}

}  // namespace

void for_each_simple_permutation(std::size_t n, const std::function<void(const Permutation&)>& visit) {
    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), std::size_t{0});
    std::vector<bool> used(n, false);
    visit_simple(image, used, n, n % 2 == 1, visit);
}

KappaResult exhaustive_kappa(const Collection& c, bool simple_only, std::size_t limit) {
    const std::size_t n = c.ground_size();
    if (n > limit) {
        throw LimitExceeded("exhaustive kappa needs n <= " + std::to_string(limit) + ", got n = " + std::to_string(n));
    }
    std::optional<KappaResult> best;
    auto consider = [&](const Permutation& p) {
        const std::size_t k = count_inverted(p, c);
        if (!best || k > best->count) best = KappaResult{p, k};
    };
    if (simple_only) {
        for_each_simple_permutation(n, consider);
    } else {
        std::vector<std::size_t> image(n);
        std::iota(image.begin(), image.end(), std::size_t{0});
        do {
            consider(Permutation(image));
        } while (std::next_permutation(image.begin(), image.end()));
    }
    return *best;
}

}  // namespace invpack
