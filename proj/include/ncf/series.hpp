#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace ncf {

/// A truncated series together with what it cost and how far off it can be.
struct SeriesEstimate {
    double value = 0.0;
    std::size_t terms = 0;     ///< terms summed explicitly
    double error_bound = 0.0;  ///< bound on |value - exact|, tail enclosure plus quadrature error
};

/// Sums f(k) for k = first, first + 1, ... to within `abs_tol`.
///
/// `f` must be positive, decreasing and convex on [convex_from - 1/2, inf). Terms
/// below `convex_from` are summed explicitly. The tail sum_{k >= K} f(k) is then
/// enclosed between  int_K^inf f + f(K)/2  (trapezoid, convexity) and
/// int_{K-1/2}^inf f  (midpoint, convexity); K doubles until half of that
/// enclosure is below `abs_tol`. The midpoint of the enclosure is returned.
SeriesEstimate sum_convex_series(const std::function<double(double)>& f, std::uint64_t first,
                                 double abs_tol, std::uint64_t convex_from = 8);

/// int_a^inf f(t) dt by double-exponential quadrature. `error` receives the estimate.
double integrate_to_infinity(const std::function<double(double)>& f, double a, double* error = nullptr);

}  // namespace ncf
