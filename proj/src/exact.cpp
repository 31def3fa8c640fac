#include "invpack/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace invpack {

ExactRational::ExactRational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    // the backend rejects negative denominators
    value_ = den < 0 ? boost::multiprecision::cpp_rational(BigInt(-num), BigInt(-den))
                     : boost::multiprecision::cpp_rational(num, den);
}

BigInt ExactRational::numerator() const { return boost::multiprecision::numerator(value_); }

BigInt ExactRational::denominator() const { return boost::multiprecision::denominator(value_); }

BigInt ExactRational::floor() const {
    const BigInt num = numerator();
    const BigInt den = denominator();
    BigInt q = num / den;  // truncates toward zero
    if (num < 0 && q * den != num) q -= 1;
    return q;
}

BigInt ExactRational::ceil() const {
    const BigInt f = floor();
    return f * denominator() == numerator() ? f : f + 1;
}

double ExactRational::to_double() const {
    const BigInt num = numerator();
    const BigInt den = denominator();
    if (num == 0) return 0.0;
    const double sign = num < 0 ? -1.0 : 1.0;
    BigInt a = num < 0 ? BigInt(-num) : num;
    BigInt b = den;
    // scale so the integer quotient carries 64 significant bits
    const long shift = 64 + static_cast<long>(boost::multiprecision::msb(b)) -
                       static_cast<long>(boost::multiprecision::msb(a));
    if (shift > 0) a <<= shift;
    else b <<= -shift;
    const BigInt q = a / b;
    return sign * std::ldexp(q.convert_to<double>(), static_cast<int>(-shift));
}

std::string ExactRational::str() const { return numerator().str() + "/" + denominator().str(); }

ExactRational& ExactRational::operator/=(const ExactRational& o) {
    if (o.value_ == 0) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
}

BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

BigInt power(const BigInt& base, std::uint64_t exponent) {
    BigInt result = 1;
    BigInt b = base;
    while (exponent > 0) {
        if (exponent & 1U) result *= b;
        exponent >>= 1U;
        if (exponent > 0) b *= b;
    }
    return result;
}

double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log of non-positive integer");
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 60) return std::log(x.convert_to<double>());
    const std::size_t shift = bits - 60;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

ExactRational best_rational_approximation(const ExactRational& x, std::int64_t max_den) {
    if (max_den < 1) throw std::invalid_argument("max_den must be positive");
    if (x.denominator() <= max_den) return x;
    const bool negative = x < ExactRational(0);
    BigInt num = negative ? BigInt(-x.numerator()) : x.numerator();
    BigInt den = x.denominator();

    // Continued-fraction convergents p1/q1 with predecessor p0/q0.
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    while (den != 0) {
        const BigInt a = num / den;
        const BigInt q2 = q0 + a * q1;
        if (q2 > max_den) break;
        const BigInt p2 = p0 + a * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const BigInt rem = num - a * den;
        num = den;
        den = rem;
    }
    const ExactRational target = negative ? -x : x;
    const BigInt k = (BigInt(max_den) - q0) / q1;
    const ExactRational semi(p0 + k * p1, q0 + k * q1);
    const ExactRational conv(p1, q1);
    auto dist = [&](const ExactRational& r) {
        const ExactRational d = r - target;
        return d < ExactRational(0) ? -d : d;
    };
    ExactRational best = dist(semi) < dist(conv) ? semi : conv;
    return negative ? -best : best;
}

ExactRational parse_rational(std::string_view text, std::int64_t max_den) {
    auto fail = [&]() -> ExactRational {
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();
    auto parse_int = [&](std::string_view s) -> BigInt {
        bool neg = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            neg = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) fail();
        for (char ch : s) {
            if (ch < '0' || ch > '9') fail();
        }
        // cpp_int reads a leading 0 as an octal prefix
        while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
        BigInt v{std::string(s)};
        return neg ? BigInt(-v) : v;
    };

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const BigInt p = parse_int(text.substr(0, slash));
        const BigInt q = parse_int(text.substr(slash + 1));
        if (q == 0) fail();
        return ExactRational(p, q);
    }
    if (const auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = text.substr(0, dot);
        const std::string_view frac_part = text.substr(dot + 1);
        bool neg = false;
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
            neg = int_part.front() == '-';
            int_part.remove_prefix(1);
        }
        if (int_part.empty() && frac_part.empty()) fail();
        const BigInt whole = int_part.empty() ? BigInt(0) : parse_int(int_part);
        const BigInt frac = frac_part.empty() ? BigInt(0) : parse_int(frac_part);
        if (whole < 0 || frac < 0) fail();
        const BigInt scale = power(BigInt(10), frac_part.size());
        ExactRational exact(whole * scale + frac, scale);
        if (neg) exact = -exact;
        return best_rational_approximation(exact, max_den);
    }
    return ExactRational(parse_int(text));
}

}  // namespace invpack
