#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncf/dynamics.hpp"
#include "ncf/series.hpp"

namespace ncf {

inline constexpr double kDefaultSeriesTol = 1e-12;

/// Invariant density 1 / ((N + x) ln(1 + 1/N)) on [0, 1).
double density(NIndex N, double x);

/// F(t) = ln(1 + t/N) / ln(1 + 1/N), the invariant CDF extended to t >= 0.
double cdf(NIndex N, double t);

/// mu_N(T_N^{-1}[0, alpha)) = sum_{k >= N} (F(N/k) - F(N/(k + alpha))), summed as a series.
/// Invariance means this equals cdf(N, alpha).
SeriesEstimate preimage_cdf(NIndex N, double alpha, double tol = kDefaultSeriesTol);

/// Asymptotic frequency V_N(M) of the digit M >= N.
double frequency(NIndex N, unsigned long M);

/// Geometric mean K_N of the digits. `tol` bounds the error of ln K_N (relative error of K_N).
SeriesEstimate khinchin(NIndex N, double tol = kDefaultSeriesTol);

/// Hoelder mean K_{N,r}. For r >= 1 the mean is +infinity almost surely and the
/// result carries `divergent = true` instead of a number.
struct HolderMean {
    double r = 0.0;
    bool divergent = false;
    SeriesEstimate estimate;  ///< value is K_{N,r}; meaningless when divergent
};

/// r = 0 dispatches to khinchin. `tol` is a relative tolerance on K_{N,r}.
HolderMean holder_mean(NIndex N, double r, double tol = kDefaultSeriesTol);

/// Theta(x) = int_0^x ln(1 + t)/t dt = -Li_2(-x) for x in [0, 1].
double dilog_theta(double x);

/// Lambda_N = Theta(1/N) / ln(1 + 1/N).
double levy_lambda(NIndex N);
/// Almost-sure Lyapunov exponent 2 Lambda_N + ln N.
double lyapunov_const(NIndex N);
/// Almost-sure growth rate of ln B_n / n, Lambda_N + ln N.
double levy_L(NIndex N);
/// Decimal digits gained per convergent, ln 10 / (2 Lambda_N + ln N).
double loch(NIndex N);

/// 1 + 1/(4N) - 7/(72 N^2) + 1/(18 N^3). Poor for small N.
double lambda_asymptotic(NIndex N);

/// Lower bounds that hold for every orbit.
struct LowerBounds {
    double lyapunov = 0.0;     ///< 2 ln((sqrt(N + 4) + sqrt(N)) / 2)
    double denominator = 0.0;  ///< ln((sqrt(N^2 + 4N) + N) / 2) for liminf ln B_n / n
};
LowerBounds lower_bounds(NIndex N);

/// Lyapunov exponent along the fixed point z_{N,p}: 2 ln((sqrt(p^2 + 4N) + p)/2) - ln N.
double fixed_point_lyapunov(NIndex N, unsigned long p);

/// Every closed-form constant for one N.
struct ConstantsReport {
    NIndex N;
    SeriesEstimate khinchin;
    std::vector<HolderMean> holder_means;
    double levy_lambda = 0.0;
    double levy_L = 0.0;
    double lyapunov = 0.0;
    double loch = 0.0;
    double lower_bound_lyapunov = 0.0;
    double lower_bound_denominator = 0.0;
};

ConstantsReport constants_report(NIndex N, const std::vector<double>& holder_orders, double tol = kDefaultSeriesTol);

/// Flat key/value view of a report in a fixed key order. A divergent Hoelder mean
/// keeps its three keys with missing values.
std::vector<std::pair<std::string, std::optional<double>>> flatten(const ConstantsReport& report);

}  // namespace ncf
