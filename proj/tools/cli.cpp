#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncf/constants.hpp"
#include "ncf/convergents.hpp"
#include "ncf/lab.hpp"
#include "ncf/parallel.hpp"
#include "ncf/ulam.hpp"
#include "report.hpp"

namespace ncf::cli {

namespace {

constexpr double kBirkhoffTol = 0.02;
constexpr double kFrequencyAbsTol = 0.005;
constexpr unsigned long kFrequencyDigits = 10;
constexpr double kLevyFloorSlack = 0.01;
constexpr double kIdentityTol = 1e-12;
constexpr double kAchievementTol = 1e-3;
constexpr double kUlamL1Tol = 0.01;
constexpr double kUlamStochasticTol = 1e-12;
constexpr std::size_t kMaxNs = 100'000;

struct Options {
    std::string x;
    std::string suite;
    std::string n = "1";
    std::vector<double> r;
    double tol = kDefaultSeriesTol;
    std::size_t trials = 200;
    std::size_t bits = 512;
    std::size_t max_terms = kDefaultMaxTerms;
    std::size_t cells = 512;
    std::size_t depth = 400;
    std::uint64_t seed = 42;
    bool profile = false;
    std::string format = "plain";
    std::string output;
    unsigned threads = 0;

    std::vector<unsigned long> Ns;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

unsigned long parse_index(std::string_view s)
{
    unsigned long v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || v == 0) {
        throw UsageError("--n: expected positive integers, got '" + std::string(s) + "'");
    }
    return v;
}

// "5", "1..3", "1,2,5", "1..3,10"
std::vector<unsigned long> parse_n_list(const std::string& spec)
{
    std::vector<unsigned long> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = std::min(spec.find(',', start), spec.size());
        const std::string_view item(spec.data() + start, comma - start);
        const std::size_t dots = item.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(parse_index(item));
        } else {
            const unsigned long lo = parse_index(item.substr(0, dots));
            const unsigned long hi = parse_index(item.substr(dots + 2));
            if (hi < lo || hi - lo >= kMaxNs) {
                throw UsageError("--n: bad range '" + std::string(item) + "'");
            }
            for (unsigned long n = lo; n <= hi; ++n) {
                out.push_back(n);
            }
        }
        if (out.size() > kMaxNs) {
            throw UsageError("--n: too many values");
        }
        start = comma + 1;
    }
    return out;
}

Json n_json(const Options& o)
{
    return Json(o.Ns);
}

SampleConfig sample_config(const Options& o, unsigned long N)
{
    SampleConfig cfg;
    cfg.N = NIndex(N);
    cfg.trials = o.trials;
    cfg.denominator_bits = o.bits;
    cfg.max_terms = o.max_terms;
    cfg.seed = o.seed;
    cfg.validate();
    return cfg;
}

// ---- expand ------------------------------------------------------------

Report cmd_expand(const Options& o)
{
    const Rational x = Rational::parse(o.x);
    if (!x.in_unit_interval()) {
        throw UsageError("expand: x must lie in [0, 1)");
    }
    Report rep;
    rep.command = "expand";
    rep.config = {{"x", x.str()}, {"n", n_json(o)}, {"max_terms", o.max_terms}};
    rep.columns = {"N", "n", "a_n", "A_n", "B_n", "ratio", "abs_error"};
    Json expansions = Json::array();
    for (unsigned long N : o.Ns) {
        const Expansion e = expand(x, NIndex(N), o.max_terms);
        const ConvergentTrace trace = convergent_sequence(e.coeffs, NIndex(N));
        Json coeffs = Json::array();
        for (std::size_t n = 1; n <= trace.depth(); ++n) {
            const Convergent& c = trace.at(n);
            mpq_class ratio(c.A, c.B);
            ratio.canonicalize();
            const mpq_class err = abs(x.value() - ratio);
            rep.rows.push_back({static_cast<std::int64_t>(N), static_cast<std::int64_t>(n), e.coeffs[n - 1].get_str(),
                                c.A.get_str(), c.B.get_str(), Rational(ratio).str(), err.get_d()});
            coeffs.push_back(e.coeffs[n - 1].get_str());
        }
        expansions.push_back({{"N", N}, {"coefficients", coeffs}, {"terminated", e.terminated}});
    }
    rep.summary["expansions"] = expansions;
    return rep;
}

// ---- constants ---------------------------------------------------------

Report cmd_constants(const Options& o)
{
    Report rep;
    rep.command = "constants";
    rep.config = {{"n", n_json(o)}, {"r", o.r}, {"tol", o.tol}};
    rep.columns = {"N", "quantity", "value", "status"};

    std::vector<std::vector<std::pair<std::string, std::optional<double>>>> flat(o.Ns.size());
    parallel_for(o.Ns.size(), o.threads, [&](std::size_t i) {
        flat[i] = flatten(constants_report(NIndex(o.Ns[i]), o.r, o.tol));
    });
    for (std::size_t i = 0; i < o.Ns.size(); ++i) {
        for (const auto& [key, value] : flat[i]) {
            Value v;
            if (value) {
                v = *value;
            }
            rep.rows.push_back({static_cast<std::int64_t>(o.Ns[i]), key, v, std::string(value ? "ok" : "divergent")});
        }
    }
    return rep;
}

// ---- verify ------------------------------------------------------------

enum class TolKind { Relative, Absolute, LowerBound, Divergence };

const char* kind_name(TolKind k)
{
    switch (k) {
    case TolKind::Relative:
        return "relative";
    case TolKind::Absolute:
        return "absolute";
    case TolKind::LowerBound:
        return "lower_bound";
    case TolKind::Divergence:
        break;
    }
    return "divergence";
}

struct Check {
    std::string suite;
    unsigned long N = 1;
    std::string quantity;
    double empirical = 0.0;
    std::optional<double> target;
    std::optional<double> tolerance;
    TolKind kind = TolKind::Relative;
    std::optional<std::int64_t> trials;
    std::optional<std::int64_t> terms;
    std::optional<double> standard_error;
    bool pass = false;
};

Check from_estimate(const std::string& suite, const EstimateReport& e, double tol, TolKind kind)
{
    Check c;
    c.suite = suite;
    c.N = e.N;
    c.quantity = e.quantity;
    c.empirical = e.empirical;
    c.target = e.target;
    c.tolerance = tol;
    c.kind = kind;
    c.trials = static_cast<std::int64_t>(e.trials);
    c.terms = static_cast<std::int64_t>(e.terms);
    c.standard_error = e.standard_error;
    if (kind == TolKind::Relative) {
        c.pass = e.rel_deviation().value() <= tol;
    } else {
        c.pass = e.abs_deviation().value() <= tol;
    }
    return c;
}

Check scalar_check(const std::string& suite, unsigned long N, std::string quantity, double empirical, double target,
                   double tol, TolKind kind)
{
    Check c;
    c.suite = suite;
    c.N = N;
    c.quantity = std::move(quantity);
    c.empirical = empirical;
    c.target = target;
    c.tolerance = tol;
    c.kind = kind;
    if (kind == TolKind::LowerBound) {
        c.pass = empirical >= target - tol;
    } else if (kind == TolKind::Relative) {
        c.pass = std::abs(empirical - target) <= tol * std::abs(target);
    } else {
        c.pass = std::abs(empirical - target) <= tol;
    }
    return c;
}

template <class T>
Value opt(const std::optional<T>& v)
{
    if (v) {
        return *v;
    }
    return {};
}

struct VerifyOutput {
    std::vector<Check> checks;
    Json divergence = Json::array();
};

void suite_birkhoff(const Options& o, unsigned long N, VerifyOutput& out)
{
    const SampleConfig cfg = sample_config(o, N);
    out.checks.push_back(
        from_estimate("birkhoff", birkhoff_estimate(cfg, Observable::log_digit(), o.threads), kBirkhoffTol, TolKind::Relative));
    out.checks.push_back(from_estimate("birkhoff", birkhoff_estimate(cfg, Observable::digit_indicator(N), o.threads),
                                       kBirkhoffTol, TolKind::Relative));
    for (double r : o.r) {
        if (r == 0.0) {
            continue;
        }
        const EstimateReport e = birkhoff_estimate(cfg, Observable::digit_power(r), o.threads);
        if (e.divergence) {
            Check c;
            c.suite = "birkhoff";
            c.N = N;
            c.quantity = e.quantity;
            c.empirical = e.empirical;
            c.kind = TolKind::Divergence;
            c.trials = static_cast<std::int64_t>(e.trials);
            c.terms = static_cast<std::int64_t>(e.terms);
            c.pass = e.divergence->growing;
            out.checks.push_back(c);
            Json points = Json::array();
            for (const auto& [n, mean] : e.divergence->checkpoints) {
                points.push_back({{"terms", n}, {"running_mean", mean}});
            }
            out.divergence.push_back({{"N", N}, {"quantity", e.quantity}, {"checkpoints", points}});
        } else {
            out.checks.push_back(from_estimate("birkhoff", e, kBirkhoffTol, TolKind::Relative));
        }
    }
}

void suite_levy(const Options& o, unsigned long N, VerifyOutput& out)
{
    const EstimateReport e = levy_estimate(sample_config(o, N), o.threads);
    out.checks.push_back(from_estimate("levy", e, kBirkhoffTol, TolKind::Relative));
    Check floor = scalar_check("levy", N, "levy_min_trial", e.trial_min, lower_bounds(NIndex(N)).denominator,
                               kLevyFloorSlack, TolKind::LowerBound);
    floor.trials = static_cast<std::int64_t>(e.trials);
    out.checks.push_back(floor);
}

void suite_lyapunov(const Options& o, unsigned long N, VerifyOutput& out)
{
    out.checks.push_back(
        from_estimate("lyapunov", lyapunov_estimate(sample_config(o, N), o.threads), kBirkhoffTol, TolKind::Relative));
}

void suite_frequencies(const Options& o, unsigned long N, VerifyOutput& out)
{
    const SampleConfig cfg = sample_config(o, N);
    for (unsigned long M = N; M < N + kFrequencyDigits; ++M) {
        out.checks.push_back(from_estimate("frequencies", birkhoff_estimate(cfg, Observable::digit_indicator(M), o.threads),
                                           kFrequencyAbsTol, TolKind::Absolute));
    }
}

void suite_bounds(const Options& o, unsigned long N, VerifyOutput& out)
{
    const LowerBounds lb = lower_bounds(NIndex(N));
    out.checks.push_back(scalar_check("bounds", N, "bound_identity", 2.0 * lb.denominator - std::log(double(N)),
                                      lb.lyapunov, kIdentityTol, TolKind::Absolute));
    const BoundAchievement b = bound_achievement(NIndex(N), o.depth);
    out.checks.push_back(from_estimate("bounds", b.levy, kAchievementTol, TolKind::Absolute));
    out.checks.push_back(from_estimate("bounds", b.lyapunov, kAchievementTol, TolKind::Absolute));
}

double max_row_error(const UlamModel& m)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < m.m; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.m; ++j) {
            s += m.at(i, j);
        }
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

void suite_ulam(const Options& o, unsigned long N, VerifyOutput& out)
{
    const UlamModel m = build_model(NIndex(N), o.cells, 0, o.threads);
    out.checks.push_back(scalar_check("ulam", N, "ulam_l1_error", m.l1_error, 0.0, kUlamL1Tol, TolKind::Absolute));
    out.checks.push_back(
        scalar_check("ulam", N, "ulam_row_sum_error", max_row_error(m), 0.0, kUlamStochasticTol, TolKind::Absolute));
    out.checks.push_back(scalar_check("ulam", N, "ulam_stationarity_residual", stationarity_residual(m, m.stationary),
                                      0.0, kUlamStochasticTol, TolKind::Absolute));
}

Report cmd_verify(const Options& o)
{
    Report rep;
    rep.command = "verify " + o.suite;
    rep.config = {{"suite", o.suite}, {"n", n_json(o)}};
    const bool sampled = o.suite == "birkhoff" || o.suite == "levy" || o.suite == "lyapunov" || o.suite == "frequencies";
    if (sampled) {
        rep.config["trials"] = o.trials;
        rep.config["bits"] = o.bits;
        rep.config["max_terms"] = o.max_terms;
        rep.config["seed"] = o.seed;
    }
    if (o.suite == "birkhoff") {
        rep.config["r"] = o.r;
    } else if (o.suite == "bounds") {
        rep.config["depth"] = o.depth;
    } else if (o.suite == "ulam") {
        rep.config["cells"] = o.cells;
    }

    VerifyOutput out;
    for (unsigned long N : o.Ns) {
        if (o.suite == "birkhoff") {
            suite_birkhoff(o, N, out);
        } else if (o.suite == "levy") {
            suite_levy(o, N, out);
        } else if (o.suite == "lyapunov") {
            suite_lyapunov(o, N, out);
        } else if (o.suite == "frequencies") {
            suite_frequencies(o, N, out);
        } else if (o.suite == "bounds") {
            suite_bounds(o, N, out);
        } else {
            suite_ulam(o, N, out);
        }
    }

    rep.columns = {"suite",     "N",         "quantity",  "empirical", "target",         "abs_deviation", "rel_deviation",
                   "tolerance", "tolerance_kind", "trials", "terms",     "standard_error", "pass"};
    std::size_t passed = 0;
    for (const Check& c : out.checks) {
        std::optional<double> abs_dev;
        std::optional<double> rel_dev;
        if (c.target) {
            abs_dev = std::abs(c.empirical - *c.target);
            if (*c.target != 0.0) {
                rel_dev = *abs_dev / std::abs(*c.target);
            }
        }
        rep.rows.push_back({c.suite, static_cast<std::int64_t>(c.N), c.quantity, c.empirical, opt(c.target), opt(abs_dev),
                            opt(rel_dev), opt(c.tolerance), std::string(kind_name(c.kind)), opt(c.trials), opt(c.terms),
                            opt(c.standard_error), c.pass});
        passed += c.pass ? 1 : 0;
    }
    rep.summary["checks"] = out.checks.size();
    rep.summary["passed"] = passed;
    rep.summary["failed"] = out.checks.size() - passed;
    if (!out.divergence.empty()) {
        rep.summary["divergence"] = out.divergence;
    }
    rep.summary["status"] = passed == out.checks.size() ? "PASS" : "FAIL";
    return rep;
}

// ---- ulam --------------------------------------------------------------

Report cmd_ulam(const Options& o)
{
    Report rep;
    rep.command = "ulam";
    rep.config = {{"n", n_json(o)}, {"cells", o.cells}, {"profile", o.profile}};
    if (o.profile) {
        rep.columns = {"N", "cell", "midpoint", "empirical", "analytic"};
    } else {
        rep.columns = {"N",        "cells",    "branch_cutoff",         "iterations",
                       "converged", "l1_error", "stationarity_residual", "max_row_error"};
    }
    for (unsigned long N : o.Ns) {
        const UlamModel m = build_model(NIndex(N), o.cells, 0, o.threads);
        if (o.profile) {
            const double md = static_cast<double>(m.m);
            for (std::size_t i = 0; i < m.m; ++i) {
                const double mid = (static_cast<double>(i) + 0.5) / md;
                rep.rows.push_back({static_cast<std::int64_t>(N), static_cast<std::int64_t>(i), mid,
                                    md * m.stationary[i], density(NIndex(N), mid)});
            }
        } else {
            rep.rows.push_back({static_cast<std::int64_t>(N), static_cast<std::int64_t>(m.m),
                                static_cast<std::int64_t>(m.branch_cutoff), static_cast<std::int64_t>(m.iterations),
                                m.converged, m.l1_error, stationarity_residual(m, m.stationary), max_row_error(m)});
        }
    }
    return rep;
}

// ---- option wiring -----------------------------------------------------

void add_n(CLI::App* sub, Options& o)
{
    sub->add_option("--n", o.n, "N values: 5, 1..3, 1,2,5 or a mix")->capture_default_str();
}

void add_output(CLI::App* sub, Options& o)
{
    sub->add_option("--format", o.format, "json, csv or plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}))
        ->capture_default_str();
    sub->add_option("--output", o.output, "write to this file instead of standard output");
    sub->add_option("--threads", o.threads, "worker threads, 0 = all cores")->capture_default_str();
}

void add_sampling(CLI::App* sub, Options& o)
{
    sub->add_option("--trials", o.trials, "random starting points")->capture_default_str();
    sub->add_option("--bits", o.bits, "denominator bits of each starting point")->capture_default_str();
    sub->add_option("--max-terms", o.max_terms, "digits per orbit at most")->capture_default_str();
    sub->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"N-continued fractions: expansions, closed-form constants and their numerical verification", "ncf"};
    app.require_subcommand(1);

    CLI::App* expand_cmd = app.add_subcommand("expand", "expand a rational p/q and list its convergents");
    expand_cmd->add_option("x", o.x, "point p/q in [0, 1)")->required();
    add_n(expand_cmd, o);
    expand_cmd->add_option("--max-terms", o.max_terms, "digits at most")->capture_default_str();
    add_output(expand_cmd, o);

    CLI::App* constants_cmd = app.add_subcommand("constants", "closed-form constants for each N");
    add_n(constants_cmd, o);
    constants_cmd->add_option("--r", o.r, "Hoelder orders, comma separated")->delimiter(',')->default_str("-1,0.5");
    constants_cmd->add_option("--tol", o.tol, "series tolerance")->capture_default_str();
    add_output(constants_cmd, o);

    CLI::App* verify_cmd = app.add_subcommand("verify", "check closed forms against exact or sampled computations");
    verify_cmd->add_option("suite", o.suite, "birkhoff, levy, lyapunov, frequencies, bounds or ulam")
        ->required()
        ->check(CLI::IsMember({"birkhoff", "levy", "lyapunov", "frequencies", "bounds", "ulam"}));
    add_n(verify_cmd, o);
    add_sampling(verify_cmd, o);
    verify_cmd->add_option("--r", o.r, "extra Hoelder orders for birkhoff, comma separated")->delimiter(',');
    verify_cmd->add_option("--depth", o.depth, "constant-digit depth for bounds")->capture_default_str();
    verify_cmd->add_option("--cells", o.cells, "Ulam cells")->capture_default_str();
    add_output(verify_cmd, o);

    CLI::App* ulam_cmd = app.add_subcommand("ulam", "Ulam discretization and its stationary density");
    add_n(ulam_cmd, o);
    ulam_cmd->add_option("--cells", o.cells, "cells")->capture_default_str();
    ulam_cmd->add_flag("--profile", o.profile, "emit the density profile instead of the summary");
    add_output(ulam_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    if (constants_cmd->parsed() && o.r.empty() && constants_cmd->count("--r") == 0) {
        o.r = {-1.0, 0.5};
    }

    Report rep;
    try {
        o.Ns = parse_n_list(o.n);
        if (expand_cmd->parsed()) {
            rep = cmd_expand(o);
        } else if (constants_cmd->parsed()) {
            rep = cmd_constants(o);
        } else if (verify_cmd->parsed()) {
            rep = cmd_verify(o);
        } else {
            rep = cmd_ulam(o);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const Format format = o.format == "json" ? Format::Json : (o.format == "csv" ? Format::Csv : Format::Plain);
    const std::string text = render(rep, format);
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream file(o.output, std::ios::binary);
        file << text;
        if (!file) {
            err << "error: cannot write " << o.output << "\n";
            return kExitUsage;
        }
    }
    if (verify_cmd->parsed() && rep.summary.value("status", "") != "PASS") {
        return kExitFail;
    }
    return kExitPass;
}

}  // namespace ncf::cli
