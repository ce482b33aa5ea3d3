#include "ncf/constants.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace ncf {

namespace {

// ln(1 + 1/N): the normalizing constant of mu_N.
double log_norm(NIndex N)
{
    return std::log1p(1.0 / N.as_double());
}

// mu_N((N/(k+1), N/k]) times ln(1 + 1/N); equals ln((k+1)^2 / (k(k+2))).
double digit_weight(double k)
{
    return std::log1p(1.0 / (k * (k + 2.0)));
}

}  // namespace

double density(NIndex N, double x)
{
    if (!(x >= 0.0 && x < 1.0)) {
        throw std::domain_error("density: x must lie in [0, 1)");
    }
    return 1.0 / ((N.as_double() + x) * log_norm(N));
}

double cdf(NIndex N, double t)
{
    if (!(t >= 0.0)) {
        throw std::domain_error("cdf: t must be >= 0");
    }
    return std::log1p(t / N.as_double()) / log_norm(N);
}

SeriesEstimate preimage_cdf(NIndex N, double alpha, double tol)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::domain_error("preimage_cdf: alpha must lie in [0, 1]");
    }
    const double c = log_norm(N);
    // F(N/k) - F(N/(k+alpha)) = ln(1 + alpha / (k (k + 1 + alpha))) / c
    auto term = [alpha](double k) { return std::log1p(alpha / (k * (k + 1.0 + alpha))); };
    if (alpha == 0.0) {
        return {};
    }
    SeriesEstimate s = sum_convex_series(term, N.value(), tol * c);
    s.value /= c;
    s.error_bound /= c;
    return s;
}

double frequency(NIndex N, unsigned long M)
{
    if (M < N.value()) {
        throw std::invalid_argument("frequency: digit M must be >= N");
    }
    return digit_weight(static_cast<double>(M)) / log_norm(N);
}

SeriesEstimate khinchin(NIndex N, double tol)
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("khinchin: tolerance must be positive");
    }
    const double c = log_norm(N);
    auto term = [](double k) { return std::log(k) * digit_weight(k); };
    const SeriesEstimate s = sum_convex_series(term, N.value(), tol * c);
    const double log_k = s.value / c;
    const double value = std::exp(log_k);
    return {value, s.terms, value * std::expm1(s.error_bound / c)};
}

HolderMean holder_mean(NIndex N, double r, double tol)
{
    if (!(tol > 0.0)) {
        throw std::invalid_argument("holder_mean: tolerance must be positive");
    }
    HolderMean out;
    out.r = r;
    if (r >= 1.0) {
        out.divergent = true;
        return out;
    }
    if (r == 0.0) {
        out.estimate = khinchin(N, tol);
        return out;
    }
    const double c = log_norm(N);
    auto term = [r](double k) { return std::pow(k, r) * digit_weight(k); };
    // For decreasing terms the sum is at least the integral; that fixes the absolute
    // tolerance needed for a relative tolerance `tol` on S^(1/r).
    const double floor_sum = integrate_to_infinity(term, N.as_double());
    const SeriesEstimate s = sum_convex_series(term, N.value(), tol * std::abs(r) * floor_sum);
    const double mean_power = s.value / c;
    const double value = std::pow(mean_power, 1.0 / r);
    const double rel = s.error_bound / s.value;
    out.estimate = {value, s.terms, value * std::abs(std::expm1(std::log1p(rel) / std::abs(r)))};
    return out;
}

double dilog_theta(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("dilog_theta: x must lie in [0, 1]");
    }
    if (x == 0.0) {
        return 0.0;
    }
    constexpr double rel_eps = 1e-17;
    if (x <= 0.5) {
        // Alternating series: error below the first omitted term.
        double sum = 0.0;
        double power = x;
        for (int k = 1;; ++k) {
            const double term = power / (static_cast<double>(k) * k);
            if (term <= rel_eps * sum) {
                break;
            }
            sum += (k % 2 == 1) ? term : -term;
            power *= x;
        }
        return sum;
    }
    // Landen: -Li2(-x) = Li2(y) + ln^2(1 + x)/2 with y = x/(1+x) <= 1/2.
    const double y = x / (1.0 + x);
    double li2 = 0.0;
    double power = y;
    for (int k = 1;; ++k) {
        const double term = power / (static_cast<double>(k) * k);
        if (term <= rel_eps * li2) {
            break;
        }
        li2 += term;
        power *= y;
    }
    const double l = std::log1p(x);
    return li2 + 0.5 * l * l;
}

double levy_lambda(NIndex N)
{
    const double x = 1.0 / N.as_double();
    return dilog_theta(x) / std::log1p(x);
}

double lyapunov_const(NIndex N)
{
    return 2.0 * levy_lambda(N) + std::log(N.as_double());
}

double levy_L(NIndex N)
{
    return levy_lambda(N) + std::log(N.as_double());
}

double loch(NIndex N)
{
    return std::numbers::ln10 / lyapunov_const(N);
}

double lambda_asymptotic(NIndex N)
{
    const double u = 1.0 / N.as_double();
    return 1.0 + u * (0.25 + u * (-7.0 / 72.0 + u / 18.0));
}

LowerBounds lower_bounds(NIndex N)
{
    const double n = N.as_double();
    return {2.0 * std::log((std::sqrt(n + 4.0) + std::sqrt(n)) / 2.0),
            std::log((std::sqrt(n * n + 4.0 * n) + n) / 2.0)};
}

double fixed_point_lyapunov(NIndex N, unsigned long p)
{
    if (p < N.value()) {
        throw std::invalid_argument("fixed_point_lyapunov: p must be >= N");
    }
    const double pp = static_cast<double>(p);
    return 2.0 * std::log((std::sqrt(pp * pp + 4.0 * N.as_double()) + pp) / 2.0) - std::log(N.as_double());
}

ConstantsReport constants_report(NIndex N, const std::vector<double>& holder_orders, double tol)
{
    ConstantsReport rep{N, khinchin(N, tol), {}};
    for (double r : holder_orders) {
        rep.holder_means.push_back(holder_mean(N, r, tol));
    }
    rep.levy_lambda = levy_lambda(N);
    rep.levy_L = rep.levy_lambda + std::log(N.as_double());
    rep.lyapunov = 2.0 * rep.levy_lambda + std::log(N.as_double());
    rep.loch = std::numbers::ln10 / rep.lyapunov;
    const LowerBounds lb = lower_bounds(N);
    rep.lower_bound_lyapunov = lb.lyapunov;
    rep.lower_bound_denominator = lb.denominator;
    return rep;
}

std::vector<std::pair<std::string, std::optional<double>>> flatten(const ConstantsReport& report)
{
    std::vector<std::pair<std::string, std::optional<double>>> out;
    out.emplace_back("khinchin", report.khinchin.value);
    out.emplace_back("khinchin_terms", static_cast<double>(report.khinchin.terms));
    out.emplace_back("khinchin_error_bound", report.khinchin.error_bound);
    for (const auto& h : report.holder_means) {
        char key[64];
        std::snprintf(key, sizeof key, "holder_mean[r=%g]", h.r);
        const std::string base = key;
        if (h.divergent) {
            out.emplace_back(base, std::nullopt);
            out.emplace_back(base + "_terms", std::nullopt);
            out.emplace_back(base + "_error_bound", std::nullopt);
            continue;
        }
        out.emplace_back(base, h.estimate.value);
        out.emplace_back(base + "_terms", static_cast<double>(h.estimate.terms));
        out.emplace_back(base + "_error_bound", h.estimate.error_bound);
    }
    out.emplace_back("levy_lambda", report.levy_lambda);
    out.emplace_back("levy_L", report.levy_L);
    out.emplace_back("lyapunov", report.lyapunov);
    out.emplace_back("loch", report.loch);
    out.emplace_back("lower_bound_lyapunov", report.lower_bound_lyapunov);
    out.emplace_back("lower_bound_denominator", report.lower_bound_denominator);
    return out;
}

}  // namespace ncf
