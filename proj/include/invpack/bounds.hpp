#pragma once

// Closed-form packing bounds. Logarithms are natural throughout; per-n
// quantities are ln(bound) / n with the sub-exponential factors dropped.

#include <cstddef>
#include <optional>

#include "invpack/exact.hpp"

namespace invpack {

/// -x ln x - (1-x) ln(1-x); 0 at both endpoints. Throws outside [0, 1].
[[nodiscard]] double entropy(double x);

struct LowerBound {
    double log_per_n = 0.0;
    double base = 1.0;
    /// c < alpha; outside it the number is still computed but proves nothing.
    bool hypothesis_holds = false;
};

/// Greedy (Turan) lower bound on the packing size, per n in log space.
/// Throws std::invalid_argument for c <= 0, alpha outside (0, 1], or
/// 1 - 2c + alpha c <= 0.
[[nodiscard]] LowerBound lower_bound_T(double c, double alpha);

/// d/dc of the lower bound's log_per_n. Positive near 0, negative near alpha.
[[nodiscard]] double optimal_c_derivative(double c, double alpha);

inline constexpr double optimal_c_tolerance = 1e-10;

/// Root of optimal_c_derivative in (0, alpha) by bisection. Throws
/// std::invalid_argument unless 0 < alpha < 1 and std::domain_error when the
/// bracket shows no sign change.
[[nodiscard]] double optimal_c(double alpha);

/// (1 - alpha) / (c - alpha). Throws std::invalid_argument when c <= alpha.
[[nodiscard]] double upper_bound_small_c(double c, double alpha);

enum class DPrime { one_minus_alpha, ratio };

/// The d' value of an endpoint: 1 - alpha, or (1 - 2c + c alpha) / (1 - c).
[[nodiscard]] double d_prime_value(DPrime which, double c, double alpha);

struct UpperBound {
    double log_per_n = 0.0;
    double base = 1.0;
    DPrime d_prime_used = DPrime::ratio;
    double d_prime = 0.0;
    /// The bound holds up to a vanishing o(1) term in log_per_n.
    bool asymptotic = true;
};

/// I(c) - c(1-alpha)/(d'(1-d')) I(d'), at both d' endpoints; the smaller wins
/// (ties go to 1 - alpha). Requires 0 < c <= alpha < 1.
[[nodiscard]] UpperBound upper_bound_entropy(double c, double alpha);
[[nodiscard]] UpperBound upper_bound_entropy_at(double c, double alpha, DPrime which);

/// C(i, j) C(i-j, k-j) == C(i, k) C(k, j).
[[nodiscard]] bool binomial_identity_holds(std::size_t i, std::size_t j, std::size_t k);

/// Finite-n upper bound C(n, cn) * ceil(N(c', alpha')) / C(en - dn, en - cn)
/// with c' = (cn - dn)/(en - dn), alpha' = (alpha cn - dn)/(cn - dn) and
/// N(c, a) = (1 - a)/(c - a). Requires dn <= alpha cn, dn < cn <= en <= n and
/// alpha' < c'.
[[nodiscard]] ExactRational finite_n_upper_bound(std::size_t n, std::size_t cn_size, const ExactRational& alpha,
                                                 std::size_t d_count, std::size_t e_count);

/// ln C(n, k): exact big-integer value for n <= 10^4, log-gamma above.
[[nodiscard]] double log_binomial(std::size_t n, std::size_t k);

struct BoundReport {
    double alpha = 0.0;
    double c = 0.0;
    std::optional<double> c_star;
    std::optional<LowerBound> lower;
    std::optional<double> ub_small_c;
    std::optional<UpperBound> upper;
};

/// Every bound defined at (c, alpha); c_star is computed when 0 < alpha < 1.
[[nodiscard]] BoundReport bound_report(double c, double alpha);

}  // namespace invpack
