#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncf/dynamics.hpp"

namespace ncf {

/// Monte Carlo setup. Trial t draws its point from an RNG seeded by (seed, t),
/// so trials are independent of each other and of the execution order.
struct SampleConfig {
    NIndex N{1};
    std::size_t trials = 200;
    std::size_t denominator_bits = 512;
    std::size_t max_terms = kDefaultMaxTerms;
    std::uint64_t seed = 42;

    void validate() const;  ///< throws std::invalid_argument
};

/// Random p/q with q of exactly `denominator_bits` bits and p uniform in [1, q), reduced.
Rational sample_point(const SampleConfig& cfg, std::size_t trial);
/// Exact expansion of sample_point(cfg, trial), truncated at cfg.max_terms.
Expansion sample_orbit(const SampleConfig& cfg, std::size_t trial);

struct Observable {
    enum class Kind { LogDigit, DigitPower, DigitIndicator, LogDerivative };
    Kind kind = Kind::LogDigit;
    double r = 0.0;         ///< DigitPower order
    unsigned long M = 0;    ///< DigitIndicator digit

    static Observable log_digit() { return {Kind::LogDigit}; }
    static Observable digit_power(double r) { return {Kind::DigitPower, r}; }
    static Observable digit_indicator(unsigned long M) { return {Kind::DigitIndicator, 0.0, M}; }
    static Observable log_derivative() { return {Kind::LogDerivative}; }

    std::string name() const;
};

/// Running means of a divergent observable over the pooled digit sequence.
struct DivergenceDiagnostic {
    std::vector<std::pair<std::size_t, double>> checkpoints;  ///< (terms, running mean)
    bool growing = false;  ///< running mean at the last checkpoint >= 1.5x the first
};

/// One empirical estimate next to its closed-form target.
///
/// Per-trial values and dispersion are expressed on the same scale as
/// `empirical` (e.g. a geometric mean, not a mean log).
struct EstimateReport {
    std::string quantity;
    unsigned long N = 1;
    double empirical = 0.0;
    std::optional<double> target;  ///< empty when the target is +infinity
    double trial_sd = 0.0;
    double standard_error = 0.0;
    double trial_rms_deviation = 0.0;  ///< RMS of (per-trial value - target)
    double trial_min = 0.0;
    double trial_max = 0.0;
    std::size_t trials = 0;
    std::size_t terms = 0;
    std::optional<DivergenceDiagnostic> divergence;

    std::optional<double> abs_deviation() const;
    std::optional<double> rel_deviation() const;
};

/// Birkhoff time average of `obs` pooled over all trials' exact orbits.
/// Digit powers with r >= 1 have an infinite space average and come back with a
/// divergence diagnostic and no target.
EstimateReport birkhoff_estimate(const SampleConfig& cfg, const Observable& obs, unsigned threads = 0);

/// Average of ln(N / x_k^2) along exact orbits; target 2 Lambda_N + ln N.
EstimateReport lyapunov_estimate(const SampleConfig& cfg, unsigned threads = 0);

/// (ln B_n)/n at the deepest n of each trial; target Lambda_N + ln N.
EstimateReport levy_estimate(const SampleConfig& cfg, unsigned threads = 0);

/// Progress of the constant-digit orbit [N, N, N, ...]_N towards the lower bounds.
struct BoundAchievement {
    struct Point {
        std::size_t n;
        double levy_deviation;      ///< (ln B_n)/n - denominator bound
        double lyapunov_deviation;  ///< partial Lyapunov average - Lyapunov bound
    };
    EstimateReport levy;
    EstimateReport lyapunov;
    std::vector<Point> profile;  ///< n = 1..depth
};

BoundAchievement bound_achievement(NIndex N, std::size_t depth);

/// Float-iteration cross-check: iterates T_N in double precision from x and
/// returns the first index where its digit differs from the exact expansion
/// (or `steps` if none does). Double-precision orbits lose the true orbit after a
/// few dozen steps; the exact expansion is the reference.
std::size_t float_shadowing_horizon(const Rational& x, NIndex N, std::size_t steps);

}  // namespace ncf
