#include "ncf/ulam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ncf/constants.hpp"
#include "ncf/parallel.hpp"

namespace ncf {

std::uint64_t default_branch_cutoff(NIndex N, std::size_t m)
{
    return std::max<std::uint64_t>(10 * N.value() * m, 100'000);
}

namespace {

// Adds m * |[lo, hi) intersected with T^{-1}(cell_j)| to row[j] for the part of branch k on [lo, hi).
// Returns the branch piece's contribution per target cell through `row`.
void add_branch_piece(std::vector<double>& row, std::size_t m, double n, double k, double lo, double hi)
{
    const double md = static_cast<double>(m);
    // T(x) = n/x - k is decreasing, so [lo, hi) maps onto (n/hi - k, n/lo - k].
    const double y_lo = std::max(0.0, n / hi - k);
    const double y_hi = std::min(1.0, n / lo - k);
    if (!(y_hi > y_lo)) {
        return;
    }
    const auto j_first = static_cast<std::size_t>(std::floor(y_lo * md));
    const auto j_last = std::min(m - 1, static_cast<std::size_t>(std::ceil(y_hi * md)) - 1);
    for (std::size_t j = j_first; j <= j_last && j < m; ++j) {
        const double c = std::max(static_cast<double>(j) / md, y_lo);
        const double d = std::min(static_cast<double>(j + 1) / md, y_hi);
        if (d > c) {
            // n/(k+c) - n/(k+d) without cancellation.
            row[j] += md * n * (d - c) / ((k + c) * (k + d));
        }
    }
}

void assemble_row(std::vector<double>& row, NIndex N, std::size_t m, std::size_t i, std::uint64_t cutoff)
{
    const double md = static_cast<double>(m);
    const double n = N.as_double();
    const double u = static_cast<double>(i) / md;
    const double v = static_cast<double>(i + 1) / md;
    const std::uint64_t nm = N.value() * m;

    // Branch k covers (N/(k+1), N/k]; it meets [u, v) iff floor(N/v) <= k < N/u.
    const std::uint64_t k_min = std::max<std::uint64_t>(N.value(), nm / (i + 1));
    const std::uint64_t k_max = (i == 0) ? cutoff : (nm - 1) / i;

    for (std::uint64_t k = k_min; k <= k_max; ++k) {
        const double kd = static_cast<double>(k);
        const double lo = std::max(u, n / (kd + 1.0));
        const double hi = std::min(v, n / kd);
        if (hi > lo) {
            add_branch_piece(row, m, n, kd, lo, hi);
        }
    }

    if (i == 0) {
        // Branches beyond the cutoff fill (0, N/(cutoff+1)] and each maps onto all of
        // [0, 1) almost uniformly; spread that mass like the last explicit branch.
        std::vector<double> shape(m, 0.0);
        const double kd = static_cast<double>(cutoff);
        add_branch_piece(shape, m, n, kd, n / (kd + 1.0), n / kd);
        double shape_total = 0.0;
        for (double s : shape) {
            shape_total += s;
        }
        const double tail_mass = md * n / (kd + 1.0);
        for (std::size_t j = 0; j < m; ++j) {
            row[j] += tail_mass * shape[j] / shape_total;
        }
    }

    double total = 0.0;
    for (double p : row) {
        total += p;
    }
    for (double& p : row) {
        p /= total;
    }
}

}  // namespace

UlamModel build_model(NIndex N, std::size_t m, std::uint64_t branch_cutoff, unsigned threads)
{
    if (m < kUlamMinCells || m > kUlamMaxCells) {
        throw std::invalid_argument("build_model: cell count must lie in [" + std::to_string(kUlamMinCells) + ", " +
                                    std::to_string(kUlamMaxCells) + "]");
    }
    if (branch_cutoff == 0) {
        branch_cutoff = default_branch_cutoff(N, m);
    }
    if (branch_cutoff < N.value() * m) {
        throw std::invalid_argument("build_model: branch_cutoff must be >= N * m");
    }

    UlamModel model;
    model.N = N;
    model.m = m;
    model.branch_cutoff = branch_cutoff;
    model.P.assign(m * m, 0.0);

    parallel_for(m, threads, [&](std::size_t i) {
        std::vector<double> row(m, 0.0);
        assemble_row(row, N, m, i, branch_cutoff);
        std::copy(row.begin(), row.end(), model.P.begin() + static_cast<std::ptrdiff_t>(i * m));
    });

    StationaryResult s = stationary(model);
    model.stationary = std::move(s.pi);
    model.iterations = s.iterations;
    model.converged = s.converged;
    model.l1_error = density_l1_error(N, model.stationary);
    return model;
}

namespace {

std::vector<double> left_multiply(const UlamModel& model, const std::vector<double>& pi)
{
    const std::size_t m = model.m;
    std::vector<double> next(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double w = pi[i];
        const double* row = model.P.data() + i * m;
        for (std::size_t j = 0; j < m; ++j) {
            next[j] += w * row[j];
        }
    }
    return next;
}

}  // namespace

StationaryResult stationary(const UlamModel& model, double tol, std::size_t max_iters)
{
    const std::size_t m = model.m;
    if (model.P.size() != m * m || m == 0) {
        throw std::invalid_argument("stationary: malformed model");
    }
    StationaryResult out;
    out.pi.assign(m, 1.0 / static_cast<double>(m));
    for (std::size_t it = 1; it <= max_iters; ++it) {
        std::vector<double> next = left_multiply(model, out.pi);
        double total = 0.0;
        for (double p : next) {
            total += p;
        }
        double change = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            next[j] /= total;
            change += std::abs(next[j] - out.pi[j]);
        }
        out.pi = std::move(next);
        out.iterations = it;
        out.last_change = change;
        if (change < tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

double stationarity_residual(const UlamModel& model, const std::vector<double>& pi)
{
    const std::vector<double> next = left_multiply(model, pi);
    double r = 0.0;
    for (std::size_t j = 0; j < pi.size(); ++j) {
        r += std::abs(next[j] - pi[j]);
    }
    return r;
}

double density_l1_error(NIndex N, const std::vector<double>& pi)
{
    const auto md = static_cast<double>(pi.size());
    double err = 0.0;
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double mid = (static_cast<double>(i) + 0.5) / md;
        err += std::abs(md * pi[i] - density(N, mid));
    }
    return err / md;
}

}  // namespace ncf
