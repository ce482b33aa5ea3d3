#include "ncf/dynamics.hpp"

#include <stdexcept>
#include <string>

namespace ncf {

NIndex::NIndex(unsigned long n) : n_(n)
{
    if (n == 0) {
        throw std::invalid_argument("N must be a positive integer");
    }
}

namespace {

void require_orbit_point(const Rational& x)
{
    if (!x.in_unit_interval()) {
        throw std::domain_error("orbit point " + x.str() + " is outside [0, 1)");
    }
}

}  // namespace

std::pair<BigInt, Rational> gauss_step(const Rational& x, NIndex N)
{
    require_orbit_point(x);
    if (x.is_zero()) {
        throw std::domain_error("gauss_step: x = 0 has no finite digit");
    }
    // N/x = N*q/p; quotient is the digit, remainder/p the new point.
    const BigInt scaled = x.den() * N.value();
    BigInt quotient;
    BigInt remainder;
    mpz_tdiv_qr(quotient.get_mpz_t(), remainder.get_mpz_t(), scaled.get_mpz_t(), x.num().get_mpz_t());
    return {std::move(quotient), Rational(std::move(remainder), x.num())};
}

Rational gauss_map(const Rational& x, NIndex N)
{
    require_orbit_point(x);
    if (x.is_zero()) {
        return x;
    }
    return gauss_step(x, N).second;
}

BigInt digit(const Rational& x, NIndex N)
{
    return gauss_step(x, N).first;
}

Expansion expand(const Rational& x, NIndex N, std::size_t max_terms)
{
    require_orbit_point(x);
    Expansion out{N, {}, false};
    Rational point = x;
    // The numerator of the orbit point strictly decreases, so this terminates on rationals.
    while (!point.is_zero()) {
        if (out.coeffs.size() >= max_terms) {
            return out;
        }
        auto [a, next] = gauss_step(point, N);
        out.coeffs.push_back(std::move(a));
        point = std::move(next);
    }
    out.terminated = true;
    return out;
}

void require_admissible(std::span<const BigInt> coeffs, NIndex N)
{
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] < N.value()) {
            throw std::invalid_argument("digit a_" + std::to_string(k + 1) + " = " + coeffs[k].get_str() +
                                        " is smaller than N = " + std::to_string(N.value()));
        }
    }
}

Rational evaluate(std::span<const BigInt> coeffs, NIndex N)
{
    if (coeffs.empty()) {
        throw std::invalid_argument("evaluate: empty digit sequence");
    }
    require_admissible(coeffs, N);
    const mpq_class n_q(N.value());
    mpq_class tail(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        tail = n_q / (mpq_class(*it) + tail);
    }
    return Rational(tail);
}

mpf_class fixed_point(NIndex N, unsigned long p, unsigned long precision_bits)
{
    if (p < N.value()) {
        throw std::invalid_argument("fixed_point: p must be >= N");
    }
    mpf_class pp(p, precision_bits);
    mpf_class disc(pp * pp + 4 * mpf_class(N.value(), precision_bits), precision_bits);
    mpf_class root(0, precision_bits);
    mpf_sqrt(root.get_mpf_t(), disc.get_mpf_t());
    mpf_class z((root - pp) / 2, precision_bits);
    return z;
}

mpf_class gauss_map(const mpf_class& x, NIndex N)
{
    const auto prec = x.get_prec();
    if (sgn(x) == 0) {
        return mpf_class(0, prec);
    }
    if (sgn(x) < 0 || x >= 1) {
        throw std::domain_error("gauss_map: x outside [0, 1)");
    }
    mpf_class y(mpf_class(N.value(), prec) / x, prec);
    mpf_class whole(0, prec);
    mpf_floor(whole.get_mpf_t(), y.get_mpf_t());
    return mpf_class(y - whole, prec);
}

}  // namespace ncf
