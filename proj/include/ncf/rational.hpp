#pragma once

#include <compare>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ncf {

using BigInt = mpz_class;

/// Natural logarithm of a positive arbitrary-precision integer.
/// Works far beyond the double range (ln of a 10^6-bit integer is fine).
double log_big(const BigInt& z);

/// Exact non-negative fraction, always kept in lowest terms.
class Rational {
public:
    Rational() = default;
    Rational(BigInt num, BigInt den);
    explicit Rational(const mpq_class& q);

    /// Parses "p/q" (or a bare integer "p"). Decimal literals are rejected.
    static Rational parse(std::string_view text);

    const BigInt& num() const { return value_.get_num(); }
    const BigInt& den() const { return value_.get_den(); }
    const mpq_class& value() const { return value_; }

    bool is_zero() const { return sgn(value_) == 0; }
    /// True when 0 <= x < 1, i.e. the value is a valid orbit point.
    bool in_unit_interval() const { return num() < den(); }

    double to_double() const { return value_.get_d(); }
    std::string str() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b)
    {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

/// ln |q| for a non-zero rational, computed as ln|num| - ln den.
double log_abs(const mpq_class& q);

}  // namespace ncf
