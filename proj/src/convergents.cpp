#include "ncf/convergents.hpp"

#include <stdexcept>
#include <string>

namespace ncf {

ConvergentTrace convergent_sequence(std::span<const BigInt> coeffs, NIndex N)
{
    require_admissible(coeffs, N);
    ConvergentTrace trace{N, std::vector<BigInt>(coeffs.begin(), coeffs.end()), {}};
    trace.convergents.reserve(coeffs.size() + 1);
    trace.convergents.push_back({0, BigInt(0), BigInt(1)});
    if (coeffs.empty()) {
        return trace;
    }
    trace.convergents.push_back({1, BigInt(N.value()), coeffs[0]});
    for (std::size_t n = 2; n <= coeffs.size(); ++n) {
        const auto& prev = trace.convergents[n - 1];
        const auto& prev2 = trace.convergents[n - 2];
        const BigInt& a = coeffs[n - 1];
        BigInt A = a * prev.A + N.value() * prev2.A;
        BigInt B = a * prev.B + N.value() * prev2.B;
        trace.convergents.push_back({n, std::move(A), std::move(B)});
    }
    return trace;
}

bool determinant_check(const ConvergentTrace& trace)
{
    BigInt power(1);
    const long step = -static_cast<long>(trace.N.value());
    for (std::size_t n = 1; n < trace.convergents.size(); ++n) {
        power *= step;
        const auto& prev = trace.convergents[n - 1];
        const auto& cur = trace.convergents[n];
        if (prev.A * cur.B - cur.A * prev.B != power) {
            return false;
        }
    }
    return true;
}

bool growth_check(const ConvergentTrace& trace)
{
    BigInt power(1);
    for (std::size_t n = 0; n < trace.convergents.size(); ++n) {
        if (n > 0) {
            power *= trace.N.value();
        }
        if (trace.convergents[n].B < power) {
            return false;
        }
    }
    return true;
}

double approximation_rate(const Rational& x, NIndex N, std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("approximation_rate: n must be >= 1");
    }
    const Expansion e = expand(x, N, n);
    if (e.coeffs.size() < n) {
        throw std::domain_error("approximation_rate: expansion terminated after " +
                                std::to_string(e.coeffs.size()) + " digits, before n = " + std::to_string(n));
    }
    const ConvergentTrace trace = convergent_sequence(e.coeffs, N);
    const auto& c = trace.at(n);
    mpq_class diff = x.value() - mpq_class(c.A, c.B);
    if (sgn(diff) == 0) {
        throw std::domain_error("approximation_rate: x equals its n-th convergent");
    }
    return -log_abs(diff) / static_cast<double>(n);
}

bool error_bounds_check(const ConvergentTrace& trace, const Rational& x)
{
    // With x = p/q, |B_n x - A_n| = |B_n p - A_n q| / q; everything below is integer.
    const BigInt& p = x.num();
    const BigInt& q = x.den();
    BigInt n_pow(1);
    for (std::size_t n = 0; n < trace.convergents.size(); ++n) {
        if (n > 0) {
            n_pow *= trace.N.value();
        }
        const auto& c = trace.convergents[n];
        BigInt residual = abs(c.B * p - c.A * q);
        if (residual * c.B > n_pow * q) {
            return false;
        }
        const bool has_next = n + 1 < trace.convergents.size();
        if (!has_next || sgn(residual) == 0) {
            continue;
        }
        const BigInt& next_b = trace.convergents[n + 1].B;
        if (!(n_pow * trace.N.value() * q < 4 * next_b * residual)) {
            return false;
        }
    }
    return true;
}

}  // namespace ncf
