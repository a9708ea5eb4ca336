#include "freemax/numeric.hpp"

#include <algorithm>
#include <stdexcept>

namespace freemax::numeric {

Maximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                           int iterations)
{
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < iterations && hi - lo > 4 * kMachineEps * std::max(1.0, std::abs(lo));
         ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = f(x1);
        }
    }
    return f1 >= f2 ? Maximum{x1, f1} : Maximum{x2, f2};
}

Maximum grid_max(const std::function<double(double)>& f, std::span<const double> nodes)
{
    if (nodes.empty())
        throw std::invalid_argument("grid_max: empty grid");
    std::size_t best = 0;
    double best_value = f(nodes[0]);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double v = f(nodes[i]);
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    Maximum result{nodes[best], best_value};
    if (nodes.size() < 2)
        return result;
    const double lo = nodes[best == 0 ? 0 : best - 1];
    const double hi = nodes[best + 1 == nodes.size() ? best : best + 1];
    if (hi > lo) {
        const Maximum refined = golden_section_max(f, lo, hi);
        if (refined.value > result.value)
            result = refined;
    }
    return result;
}

std::vector<double> geometric_offsets(double lo, double hi, double t_min, std::size_t n)
{
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(lo + (hi - lo) * t_min);
        return out;
    }
    const double log_t = std::log(t_min);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::exp(log_t * (1.0 - static_cast<double>(i) / (n - 1)));
        out.push_back(lo + (hi - lo) * t);
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> out;
    out.reserve(n);
    if (n == 1) {
        out.push_back(lo);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    out.back() = hi;
    return out;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("least_squares_slope: need at least two paired points");
    const double m = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

double five_point_derivative(const std::function<double(double)>& f, double x, double h)
{
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

} // namespace freemax::numeric
