#include "invpack/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace invpack {

namespace {

// x ln x with the continuous extension 0 ln 0 = 0.
double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

void require_unit_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
}

}  // namespace

double entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("entropy argument must lie in [0, 1]");
    return -xlogx(x) - xlogx(1.0 - x);
}

LowerBound lower_bound_T(double c, double alpha) {
    require_unit_alpha(alpha);
    if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
    const double rest = 1.0 - 2.0 * c + alpha * c;
    if (!(rest > 0.0)) throw std::invalid_argument("1 - 2c + alpha c must be positive");
    LowerBound r;
    r.log_per_n = alpha * c * std::log(alpha / c) + 2.0 * c * xlogx(1.0 - alpha) + xlogx(rest) -
                  2.0 * xlogx(1.0 - c);
    r.base = std::exp(r.log_per_n);
    r.hypothesis_holds = c < alpha;
    return r;
}

double optimal_c_derivative(double c, double alpha) {
    return alpha * std::log(alpha) + 2.0 * xlogx(1.0 - alpha) + 2.0 * std::log(1.0 - c) - alpha * std::log(c) -
           (2.0 - alpha) * std::log(1.0 - 2.0 * c + alpha * c);
}

double optimal_c(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("optimal_c needs 0 < alpha < 1");
    const double eps = std::min(1e-12, alpha / 4.0);
    double lo = eps;
    double hi = alpha - eps;
    double f_lo = optimal_c_derivative(lo, alpha);
    const double f_hi = optimal_c_derivative(hi, alpha);
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
        throw std::domain_error("no sign change of the derivative on (0, alpha) for alpha = " + std::to_string(alpha));
    }
    for (int it = 0; it < 200 && hi - lo > optimal_c_tolerance; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = optimal_c_derivative(mid, alpha);
        if (f_mid > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double upper_bound_small_c(double c, double alpha) {
    if (!(c > alpha)) throw std::invalid_argument("the small-c bound needs c > alpha");
    return (1.0 - alpha) / (c - alpha);
}

double d_prime_value(DPrime which, double c, double alpha) {
    return which == DPrime::one_minus_alpha ? 1.0 - alpha : (1.0 - 2.0 * c + c * alpha) / (1.0 - c);
}

UpperBound upper_bound_entropy_at(double c, double alpha, DPrime which) {
    if (!(c > 0.0 && c <= alpha && alpha < 1.0)) throw std::invalid_argument("entropy bound needs 0 < c <= alpha < 1");
    const double d = d_prime_value(which, c, alpha);
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("d' endpoint outside (0, 1)");
    UpperBound r;
    r.d_prime_used = which;
    r.d_prime = d;
    r.log_per_n = entropy(c) - c * (1.0 - alpha) / (d * (1.0 - d)) * entropy(d);
    r.base = std::exp(r.log_per_n);
    return r;
}

UpperBound upper_bound_entropy(double c, double alpha) {
    const UpperBound a = upper_bound_entropy_at(c, alpha, DPrime::one_minus_alpha);
    const UpperBound b = upper_bound_entropy_at(c, alpha, DPrime::ratio);
    return b.log_per_n < a.log_per_n ? b : a;
}

bool binomial_identity_holds(std::size_t i, std::size_t j, std::size_t k) {
    if (j > k || k > i) return false;
    return binomial(i, j) * binomial(i - j, k - j) == binomial(i, k) * binomial(k, j);
}

ExactRational finite_n_upper_bound(std::size_t n, std::size_t cn_size, const ExactRational& alpha,
                                   std::size_t d_count, std::size_t e_count) {
    if (!(cn_size <= e_count && e_count <= n)) throw std::invalid_argument("need cn <= en <= n");
    if (d_count >= cn_size) throw std::invalid_argument("need dn < cn");
    const auto cn = static_cast<std::int64_t>(cn_size);
    const auto dn = static_cast<std::int64_t>(d_count);
    const auto en = static_cast<std::int64_t>(e_count);
    if (ExactRational(dn) > alpha * ExactRational(cn)) throw std::invalid_argument("need dn <= alpha cn");
    const ExactRational c2(BigInt(cn - dn), BigInt(en - dn));
    const ExactRational a2 = (alpha * ExactRational(cn) - ExactRational(dn)) / ExactRational(cn - dn);
    if (!(a2 < c2)) throw std::invalid_argument("hypothesis violated: (alpha c - d)/(c - d) must be below (c - d)/(e - d)");
    // double counting of (block, dn-subset, en-superset) flags
    if (!binomial_identity_holds(n, d_count, cn_size) || !binomial_identity_holds(n - d_count, cn_size - d_count, e_count - d_count)) {
        throw std::logic_error("binomial identity failed");
    }
    const ExactRational count_bound((ExactRational(1) - a2) / (c2 - a2));
    return ExactRational(binomial(n, cn_size) * count_bound.ceil(), binomial(e_count - d_count, e_count - cn_size));
}

double log_binomial(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("log_binomial needs k <= n");
    if (n <= 10'000) return log_big(binomial(n, k));
    const auto x = static_cast<double>(n);
    const auto y = static_cast<double>(k);
    return std::lgamma(x + 1.0) - std::lgamma(y + 1.0) - std::lgamma(x - y + 1.0);
}

BoundReport bound_report(double c, double alpha) {
    require_unit_alpha(alpha);
    BoundReport r;
    r.alpha = alpha;
    r.c = c;
    if (alpha < 1.0) r.c_star = optimal_c(alpha);
    if (c > 0.0 && 1.0 - 2.0 * c + alpha * c > 0.0) r.lower = lower_bound_T(c, alpha);
    if (c > alpha) r.ub_small_c = upper_bound_small_c(c, alpha);
    if (c > 0.0 && c <= alpha && alpha < 1.0) r.upper = upper_bound_entropy(c, alpha);
    return r;
}

}  // namespace invpack
