#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace invpack {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational in lowest terms with a positive denominator.
class ExactRational {
  public:
    ExactRational() = default;
    ExactRational(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    ExactRational(const BigInt& value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    /// Throws std::invalid_argument when den == 0.
    ExactRational(const BigInt& num, const BigInt& den);

    [[nodiscard]] BigInt numerator() const;
    [[nodiscard]] BigInt denominator() const;

    [[nodiscard]] BigInt floor() const;
    [[nodiscard]] BigInt ceil() const;
    [[nodiscard]] double to_double() const;
    [[nodiscard]] bool is_integer() const { return denominator() == 1; }

    /// Always "p/q", including q = 1.
    [[nodiscard]] std::string str() const;

    ExactRational& operator+=(const ExactRational& o) { value_ += o.value_; return *this; }
    ExactRational& operator-=(const ExactRational& o) { value_ -= o.value_; return *this; }
    ExactRational& operator*=(const ExactRational& o) { value_ *= o.value_; return *this; }
    ExactRational& operator/=(const ExactRational& o);

    friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
    friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
    friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
    friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }
    friend ExactRational operator-(const ExactRational& a) { return ExactRational(BigInt(0)) - a; }

    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ > b.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

  private:
    boost::multiprecision::cpp_rational value_;
};

[[nodiscard]] BigInt factorial(std::uint64_t n);
/// C(n, k); zero when k > n.
[[nodiscard]] BigInt binomial(std::uint64_t n, std::uint64_t k);
[[nodiscard]] BigInt power(const BigInt& base, std::uint64_t exponent);

/// Natural log of a positive big integer, accurate to double precision.
[[nodiscard]] double log_big(const BigInt& x);

/// Parses "P/Q", an integer, or a decimal. Decimals are replaced by the
/// closest rational with denominator <= max_den. Throws std::invalid_argument.
[[nodiscard]] ExactRational parse_rational(std::string_view text, std::int64_t max_den = 1'000'000);

/// Closest fraction to x with denominator <= max_den (best approximation).
[[nodiscard]] ExactRational best_rational_approximation(const ExactRational& x, std::int64_t max_den);

}  // namespace invpack
