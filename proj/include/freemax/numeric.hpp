#pragma once

// Small numerical kernels shared by the modules: bracketing bisection,
// golden-section maximisation, finite differences, grids and line fits.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace freemax::numeric {

inline constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

/// Step for central differences: cbrt(eps) * max(1, |x|).
inline double difference_step(double x)
{
    return std::cbrt(kMachineEps) * std::max(1.0, std::abs(x));
}

/// Bisection on a monotone predicate. Requires below(lo) and !below(hi);
/// returns the final bracket (lo, hi). Stops when the bracket cannot be split
/// further or after max_iter halvings.
template <class Below>
std::pair<double, double> bisect_boundary(Below&& below, double lo, double hi, int max_iter)
{
    for (int it = 0; it < max_iter; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi)
            break;
        if (below(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {lo, hi};
}

struct Maximum {
    double x;
    double value;
};

/// Golden-section search for the maximum of f on [lo, hi]. Only interior
/// points are evaluated; the caller seeds the result with endpoint values
/// it already holds.
Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                           int iterations = 80);

/// Largest f over the nodes, refined by golden section between the
/// neighbours of the best node. Refinement never leaves [nodes.front(),
/// nodes.back()].
Maximum grid_max(const std::function<double(double)>& f, std::span<const double> nodes);

/// n points lo + (hi-lo) * t with t geometric from t_min to 1.
std::vector<double> geometric_offsets(double lo, double hi, double t_min, std::size_t n);

std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

/// Five-point first derivative (-f(x+2h) + 8f(x+h) - 8f(x-h) + f(x-2h)) / 12h.
double five_point_derivative(const std::function<double(double)>& f, double x, double h);

} // namespace freemax::numeric
