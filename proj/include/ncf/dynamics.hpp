#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ncf/rational.hpp"

namespace ncf {

/// The parameter N of the map T_N(x) = {N/x}. Always >= 1.
class NIndex {
public:
    explicit NIndex(unsigned long n);
    unsigned long value() const { return n_; }
    double as_double() const { return static_cast<double>(n_); }
    friend bool operator==(NIndex, NIndex) = default;

private:
    unsigned long n_;
};

/// N-continued fraction x = N/(a_1 + N/(a_2 + ...)).
///
/// `terminated` is true when the orbit reached 0 right after the last stored
/// digit (the point was rational and fully expanded). Infinite digits never
/// appear in `coeffs`.
struct Expansion {
    NIndex N;
    std::vector<BigInt> coeffs;
    bool terminated = false;
};

inline constexpr std::size_t kDefaultMaxTerms = 10'000;

/// One step of the map: returns (a, T_N(x)) with a = floor(N/x). Requires 0 < x < 1.
std::pair<BigInt, Rational> gauss_step(const Rational& x, NIndex N);

/// T_N(x) computed exactly; T_N(0) = 0.
Rational gauss_map(const Rational& x, NIndex N);

/// Leading digit floor(N/x) of x in (0, 1). Always >= N.
BigInt digit(const Rational& x, NIndex N);

/// Iterates the map exactly until the orbit hits 0 or `max_terms` digits are produced.
Expansion expand(const Rational& x, NIndex N, std::size_t max_terms = kDefaultMaxTerms);

/// [a_1, ..., a_n]_N as a reduced fraction, evaluated from the innermost level outwards.
///
/// Every digit must be >= N. The single-digit boundary [N]_N = 1 is accepted even
/// though 1 is not an orbit point.
Rational evaluate(std::span<const BigInt> coeffs, NIndex N);

/// z_{N,p} = [p, p, p, ...]_N = (sqrt(p^2 + 4N) - p) / 2 at `precision_bits` of mantissa.
mpf_class fixed_point(NIndex N, unsigned long p, unsigned long precision_bits = 256);

/// T_N applied to a multiprecision float. Used to check fixed points.
mpf_class gauss_map(const mpf_class& x, NIndex N);

/// Throws std::invalid_argument unless every digit is >= N.
void require_admissible(std::span<const BigInt> coeffs, NIndex N);

}  // namespace ncf
