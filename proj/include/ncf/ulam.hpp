#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ncf/dynamics.hpp"

namespace ncf {

inline constexpr std::size_t kUlamMinCells = 16;
inline constexpr std::size_t kUlamMaxCells = 2048;

/// Result of the left power iteration pi <- pi P.
struct StationaryResult {
    std::vector<double> pi;
    std::size_t iterations = 0;
    double last_change = 0.0;  ///< L1 norm of the final step
    bool converged = false;
};

/// Ulam discretization of T_N on m equal cells of [0, 1).
struct UlamModel {
    NIndex N{1};
    std::size_t m = 0;
    std::uint64_t branch_cutoff = 0;
    std::vector<double> P;  ///< row-major m x m, row-stochastic
    std::vector<double> stationary;
    std::size_t iterations = 0;
    bool converged = false;
    double l1_error = 0.0;  ///< vs the invariant density at cell midpoints

    double at(std::size_t i, std::size_t j) const { return P[i * m + j]; }
};

/// max(10 N m, 10^5)
std::uint64_t default_branch_cutoff(NIndex N, std::size_t m);

/// Assembles P from exact branch preimages, then runs the power iteration and
/// measures the density error.
///
/// P[i][j] = m * |cell_i  intersected with  T_N^{-1}(cell_j)|. Branch k maps
/// (N/(k+1), N/k] onto [0, 1); branches k > branch_cutoff all sit inside cell 0
/// and their total length N/(branch_cutoff+1) is folded into row 0 with the
/// shape of the last explicit branch before the row is renormalized.
/// Pass branch_cutoff = 0 for the default.
UlamModel build_model(NIndex N, std::size_t m, std::uint64_t branch_cutoff = 0, unsigned threads = 0);

StationaryResult stationary(const UlamModel& model, double tol = 1e-13, std::size_t max_iters = 100'000);

/// || pi P - pi ||_1
double stationarity_residual(const UlamModel& model, const std::vector<double>& pi);

/// sum_i |m pi_i - density(mid_i)| / m
double density_l1_error(NIndex N, const std::vector<double>& pi);

}  // namespace ncf
