#include "ncf/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

namespace ncf {

double integrate_to_infinity(const std::function<double(double)>& f, double a, double* error)
{
    // Substituting t = a + s keeps the lower limit at 0 where exp_sinh is best behaved.
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate([&](double s) { return f(a + s); }, 1e-15, &err, &l1);
    if (error != nullptr) {
        // exp_sinh reports the difference of the last two levels; never trust less than a few ulps.
        *error = std::max(err, 8 * std::numeric_limits<double>::epsilon() * l1);
    }
    return value;
}

SeriesEstimate sum_convex_series(const std::function<double(double)>& f, std::uint64_t first, double abs_tol,
                                 std::uint64_t convex_from)
{
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("sum_convex_series: tolerance must be positive");
    }
    SeriesEstimate out;
    std::uint64_t k = first;
    std::uint64_t cutoff = std::max(first, convex_from);
    double head = 0.0;
    double compensation = 0.0;

    for (;;) {
        for (; k < cutoff; ++k) {
            // Kahan summation; the explicit part can run to 10^6 terms.
            const double y = f(static_cast<double>(k)) - compensation;
            const double t = head + y;
            compensation = (t - head) - y;
            head = t;
        }
        const double K = static_cast<double>(cutoff);
        double err_lo = 0.0;
        double err_hi = 0.0;
        const double lower = integrate_to_infinity(f, K, &err_lo) + 0.5 * f(K);
        const double upper = integrate_to_infinity(f, K - 0.5, &err_hi);
        const double half_width = 0.5 * std::abs(upper - lower) + err_lo + err_hi;
        if (half_width <= abs_tol || cutoff > (std::uint64_t{1} << 40)) {
            out.value = head + 0.5 * (lower + upper);
            out.terms = static_cast<std::size_t>(cutoff - first);
            out.error_bound = half_width + std::abs(head) * 1e-16;
            return out;
        }
        cutoff *= 2;
    }
}

}  // namespace ncf
