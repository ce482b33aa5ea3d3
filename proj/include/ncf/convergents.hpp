#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncf/dynamics.hpp"
#include "ncf/rational.hpp"

namespace ncf {

/// Unreduced n-th convergent A_n / B_n. gcd(A, B) may exceed 1.
struct Convergent {
    std::size_t n = 0;
    BigInt A;
    BigInt B;
};

/// Convergents n = 0..len of a digit sequence.
struct ConvergentTrace {
    NIndex N;
    std::vector<BigInt> coeffs;
    std::vector<Convergent> convergents;

    std::size_t depth() const { return convergents.empty() ? 0 : convergents.size() - 1; }
    const Convergent& at(std::size_t n) const { return convergents.at(n); }
};

/// Three-term recursion A_n = a_n A_{n-1} + N A_{n-2} (same for B) from the seeds
/// A_0 = 0, B_0 = 1, A_1 = N, B_1 = a_1.
ConvergentTrace convergent_sequence(std::span<const BigInt> coeffs, NIndex N);

/// Checks A_{n-1} B_n - A_n B_{n-1} = (-N)^n exactly for every n >= 1.
bool determinant_check(const ConvergentTrace& trace);

/// Checks B_n >= N^n exactly for every n.
bool growth_check(const ConvergentTrace& trace);

/// -(1/n) ln |x - A_n/B_n|, with the difference formed exactly before the logarithm.
///
/// Throws std::domain_error if the expansion of x ends before n digits or if
/// x equals its n-th convergent.
double approximation_rate(const Rational& x, NIndex N, std::size_t n);

/// Checks N^{n+1} / (4 B_{n+1}) < |B_n x - A_n| <= N^n / B_n with exact integers.
///
/// The upper bound is checked for every n in the trace. The lower bound needs
/// B_{n+1} and a non-zero remainder, so it is skipped at the last index and
/// wherever x equals A_n/B_n (end of a terminated expansion).
bool error_bounds_check(const ConvergentTrace& trace, const Rational& x);

}  // namespace ncf
