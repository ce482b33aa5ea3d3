#include "ncf/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <stdexcept>

#include "ncf/constants.hpp"
#include "ncf/convergents.hpp"
#include "ncf/parallel.hpp"

namespace ncf {

void SampleConfig::validate() const
{
    if (trials < 1) {
        throw std::invalid_argument("SampleConfig: trials must be >= 1");
    }
    if (denominator_bits < 64) {
        throw std::invalid_argument("SampleConfig: denominator_bits must be >= 64");
    }
    if (max_terms < 1) {
        throw std::invalid_argument("SampleConfig: max_terms must be >= 1");
    }
}

namespace {

std::mt19937_64 trial_engine(std::uint64_t seed, std::size_t trial)
{
    const auto t = static_cast<std::uint64_t>(trial);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
    return std::mt19937_64(seq);
}

// Uniform integer in [0, 2^bits).
BigInt random_bits(std::mt19937_64& rng, std::size_t bits)
{
    const std::size_t words = (bits + 63) / 64;
    std::vector<std::uint64_t> buf(words);
    for (auto& w : buf) {
        w = rng();
    }
    if (const std::size_t spare = words * 64 - bits; spare != 0) {
        buf.back() >>= spare;
    }
    BigInt out;
    // Least significant word first, native endianness within words.
    mpz_import(out.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    return out;
}

}  // namespace

Rational sample_point(const SampleConfig& cfg, std::size_t trial)
{
    cfg.validate();
    auto rng = trial_engine(cfg.seed, trial);
    BigInt q = random_bits(rng, cfg.denominator_bits);
    mpz_setbit(q.get_mpz_t(), cfg.denominator_bits - 1);
    const BigInt span = q - 1;
    BigInt r;
    do {
        r = random_bits(rng, cfg.denominator_bits);
    } while (r >= span);
    return Rational(r + 1, q);
}

Expansion sample_orbit(const SampleConfig& cfg, std::size_t trial)
{
    return expand(sample_point(cfg, trial), cfg.N, cfg.max_terms);
}

std::string Observable::name() const
{
    switch (kind) {
    case Kind::LogDigit:
        return "geometric_mean";
    case Kind::DigitPower: {
        char buf[64];
        std::snprintf(buf, sizeof buf, "holder_mean[r=%g]", r);
        return buf;
    }
    case Kind::DigitIndicator:
        return "frequency[M=" + std::to_string(M) + "]";
    case Kind::LogDerivative:
        return "lyapunov";
    }
    return "unknown";
}

std::optional<double> EstimateReport::abs_deviation() const
{
    if (!target) {
        return std::nullopt;
    }
    return std::abs(empirical - *target);
}

std::optional<double> EstimateReport::rel_deviation() const
{
    if (!target) {
        return std::nullopt;
    }
    return std::abs(empirical - *target) / std::abs(*target);
}

namespace {

// Raw observable values along one trial's orbit, in orbit order.
std::vector<double> observe_orbit(const Rational& start, NIndex N, std::size_t max_terms, const Observable& obs)
{
    std::vector<double> values;
    const double log_n = std::log(N.as_double());
    Rational x = start;
    while (!x.is_zero() && values.size() < max_terms) {
        auto [a, next] = gauss_step(x, N);
        switch (obs.kind) {
        case Observable::Kind::LogDigit:
            values.push_back(log_big(a));
            break;
        case Observable::Kind::DigitPower:
            values.push_back(std::exp(obs.r * log_big(a)));
            break;
        case Observable::Kind::DigitIndicator:
            values.push_back(a == obs.M ? 1.0 : 0.0);
            break;
        case Observable::Kind::LogDerivative:
            values.push_back(log_n - 2.0 * log_abs(x.value()));
            break;
        }
        x = std::move(next);
    }
    return values;
}

// Maps a raw mean onto the reported scale.
double to_reported_scale(const Observable& obs, double raw_mean)
{
    switch (obs.kind) {
    case Observable::Kind::LogDigit:
        return std::exp(raw_mean);
    case Observable::Kind::DigitPower:
        return std::pow(raw_mean, 1.0 / obs.r);
    default:
        return raw_mean;
    }
}

std::optional<double> closed_form_target(const Observable& obs, NIndex N)
{
    switch (obs.kind) {
    case Observable::Kind::LogDigit:
        return khinchin(N).value;
    case Observable::Kind::DigitPower: {
        const HolderMean h = holder_mean(N, obs.r);
        if (h.divergent) {
            return std::nullopt;
        }
        return h.estimate.value;
    }
    case Observable::Kind::DigitIndicator:
        return frequency(N, obs.M);
    case Observable::Kind::LogDerivative:
        return lyapunov_const(N);
    }
    return std::nullopt;
}

// Fills the per-trial statistics of `rep` from per-trial values on the reported scale.
void summarize_trials(EstimateReport& rep, const std::vector<double>& per_trial)
{
    const auto n = static_cast<double>(per_trial.size());
    double mean = 0.0;
    for (double v : per_trial) {
        mean += v;
    }
    mean /= n;
    double ss = 0.0;
    double rms = 0.0;
    rep.trial_min = per_trial.front();
    rep.trial_max = per_trial.front();
    for (double v : per_trial) {
        ss += (v - mean) * (v - mean);
        if (rep.target) {
            rms += (v - *rep.target) * (v - *rep.target);
        }
        rep.trial_min = std::min(rep.trial_min, v);
        rep.trial_max = std::max(rep.trial_max, v);
    }
    rep.trial_sd = per_trial.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    rep.standard_error = rep.trial_sd / std::sqrt(n);
    rep.trial_rms_deviation = rep.target ? std::sqrt(rms / n) : 0.0;
    rep.trials = per_trial.size();
}

DivergenceDiagnostic running_means(const std::vector<std::vector<double>>& per_trial, double r)
{
    DivergenceDiagnostic diag;
    double sum = 0.0;
    std::size_t count = 0;
    std::size_t next_checkpoint = 100;
    for (const auto& trial : per_trial) {
        for (double v : trial) {
            sum += v;
            ++count;
            if (count == next_checkpoint) {
                diag.checkpoints.emplace_back(count, std::pow(sum / static_cast<double>(count), 1.0 / r));
                next_checkpoint *= 4;
            }
        }
    }
    if (count > 0 && (diag.checkpoints.empty() || diag.checkpoints.back().first != count)) {
        diag.checkpoints.emplace_back(count, std::pow(sum / static_cast<double>(count), 1.0 / r));
    }
    diag.growing = diag.checkpoints.size() >= 2 &&
                   diag.checkpoints.back().second >= 1.5 * diag.checkpoints.front().second;
    return diag;
}

}  // namespace

EstimateReport birkhoff_estimate(const SampleConfig& cfg, const Observable& obs, unsigned threads)
{
    cfg.validate();
    if (obs.kind == Observable::Kind::DigitPower && obs.r == 0.0) {
        throw std::invalid_argument("birkhoff_estimate: use the log-digit observable for r = 0");
    }
    if (obs.kind == Observable::Kind::DigitIndicator && obs.M < cfg.N.value()) {
        throw std::invalid_argument("birkhoff_estimate: digit M must be >= N");
    }

    std::vector<std::vector<double>> values(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t t) {
        values[t] = observe_orbit(sample_point(cfg, t), cfg.N, cfg.max_terms, obs);
    });

    EstimateReport rep;
    rep.quantity = obs.name();
    rep.N = cfg.N.value();
    rep.target = closed_form_target(obs, cfg.N);

    // Reduction in trial order keeps the result independent of the thread count.
    double pooled = 0.0;
    std::size_t terms = 0;
    std::vector<double> per_trial;
    per_trial.reserve(cfg.trials);
    for (const auto& v : values) {
        const double s = std::accumulate(v.begin(), v.end(), 0.0);
        pooled += s;
        terms += v.size();
        per_trial.push_back(to_reported_scale(obs, s / static_cast<double>(v.size())));
    }
    rep.terms = terms;
    rep.empirical = to_reported_scale(obs, pooled / static_cast<double>(terms));
    summarize_trials(rep, per_trial);
    if (!rep.target) {
        rep.divergence = running_means(values, obs.r);
    }
    return rep;
}

EstimateReport lyapunov_estimate(const SampleConfig& cfg, unsigned threads)
{
    return birkhoff_estimate(cfg, Observable::log_derivative(), threads);
}

EstimateReport levy_estimate(const SampleConfig& cfg, unsigned threads)
{
    cfg.validate();
    std::vector<double> rate(cfg.trials);
    std::vector<std::size_t> depth(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t t) {
        const Expansion e = sample_orbit(cfg, t);
        const ConvergentTrace trace = convergent_sequence(e.coeffs, cfg.N);
        const std::size_t n = trace.depth();
        depth[t] = n;
        rate[t] = log_big(trace.at(n).B) / static_cast<double>(n);
    });

    EstimateReport rep;
    rep.quantity = "levy";
    rep.N = cfg.N.value();
    rep.target = levy_L(cfg.N);
    double sum = 0.0;
    for (double v : rate) {
        sum += v;
    }
    rep.empirical = sum / static_cast<double>(cfg.trials);
    rep.terms = std::accumulate(depth.begin(), depth.end(), std::size_t{0});
    summarize_trials(rep, rate);
    return rep;
}

BoundAchievement bound_achievement(NIndex N, std::size_t depth)
{
    if (depth < 10) {
        throw std::invalid_argument("bound_achievement: depth must be >= 10");
    }
    // A long finite [N, ..., N]_N agrees with z_{N,N} to far more digits than `depth`
    // needs, so the first `depth` orbit points shadow the fixed point.
    const std::vector<BigInt> constant(2 * depth + 16, BigInt(N.value()));
    const Rational x = evaluate(constant, N);

    const LowerBounds bounds = lower_bounds(N);
    const double log_n = std::log(N.as_double());

    std::vector<BigInt> digits;
    digits.reserve(depth);
    std::vector<double> lyap_partial;
    lyap_partial.reserve(depth);
    Rational point = x;
    double lyap_sum = 0.0;
    for (std::size_t k = 0; k < depth; ++k) {
        lyap_sum += log_n - 2.0 * log_abs(point.value());
        lyap_partial.push_back(lyap_sum / static_cast<double>(k + 1));
        auto [a, next] = gauss_step(point, N);
        digits.push_back(std::move(a));
        point = std::move(next);
    }
    const ConvergentTrace trace = convergent_sequence(digits, N);

    BoundAchievement out;
    out.profile.reserve(depth);
    for (std::size_t n = 1; n <= depth; ++n) {
        const double levy = log_big(trace.at(n).B) / static_cast<double>(n);
        out.profile.push_back({n, levy - bounds.denominator, lyap_partial[n - 1] - bounds.lyapunov});
    }

    auto single = [&](std::string name, double value, double target) {
        EstimateReport r;
        r.quantity = std::move(name);
        r.N = N.value();
        r.empirical = value;
        r.target = target;
        r.trial_min = r.trial_max = value;
        r.trial_rms_deviation = std::abs(value - target);
        r.trials = 1;
        r.terms = depth;
        return r;
    };
    out.levy = single("bound_levy", out.profile.back().levy_deviation + bounds.denominator, bounds.denominator);
    out.lyapunov = single("bound_lyapunov", lyap_partial.back(), bounds.lyapunov);
    return out;
}

std::size_t float_shadowing_horizon(const Rational& x, NIndex N, std::size_t steps)
{
    const Expansion exact = expand(x, N, steps);
    double y = x.to_double();
    const double n = N.as_double();
    for (std::size_t k = 0; k < exact.coeffs.size(); ++k) {
        if (y <= 0.0) {
            return k;
        }
        const double q = n / y;
        const double a = std::floor(q);
        if (cmp(exact.coeffs[k], a) != 0) {
            return k;
        }
        y = q - a;
    }
    return exact.coeffs.size();
}

}  // namespace ncf
