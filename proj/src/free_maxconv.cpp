#include "freemax/free_maxconv.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "freemax/errors.hpp"

namespace freemax {

namespace {

constexpr double kWindowTol = 1e-7;

SupportWindow compute_window(const FreePower& fp)
{
    const auto& spec = fp.base;
    const double a = fp.norming.a;
    const double b = fp.norming.b;

    ExtendedReal upper = ExtendedReal::pos_infinity();
    if (spec.omega.is_finite())
        upper = ExtendedReal::finite((spec.omega.value() - b) / a);

    double lower;
    if (fp.n == 1) {
        lower = (spec.support_left.as_double() - b) / a;
    } else {
        const double tail = 1.0 / static_cast<double>(fp.n);
        if (spec.omega.is_finite() && spec.tail_below_omega && b == spec.omega.value())
            lower = -solve_distance_below_omega(spec, tail) / a;
        else
            lower = (solve_upper_quantile(spec, tail) - b) / a;
    }
    return {lower, upper};
}

} // namespace

FreePower::FreePower(DistributionSpec base_, std::int64_t n_, NormingPair norming_)
    : base(std::move(base_)), n(n_), norming(norming_), window_{0.0, ExtendedReal::pos_infinity()}
{
    if (n < 1 || n > kMaxPower)
        throw InvalidArgument("FreePower: n must lie in [1, 1e9]");
    if (!(norming.a > 0) || !std::isfinite(norming.a))
        throw InvalidArgument("FreePower: norming scale must be positive");
    window_ = compute_window(*this);
    if (!(window_.a_lower < window_.b_upper.as_double()))
        throw SolverError(base.name + ": empty support window");
    if (std::isfinite(window_.a_lower) && n > 1) {
        const double at_lower = free_power_cdf(*this, window_.a_lower);
        if (at_lower > kWindowTol)
            throw SolverError(base.name + ": free power CDF not 0 at A_n");
    }
    if (window_.b_upper.is_finite()) {
        const double at_upper = free_power_cdf(*this, window_.b_upper.value());
        if (std::abs(at_upper - 1) > kWindowTol)
            throw SolverError(base.name + ": free power CDF not 1 at B_n");
    }
}

bool FreePower::below_omega_form() const
{
    return base.omega.is_finite() && base.tail_below_omega && base.pdf_below_omega &&
           norming.b == base.omega.value();
}

double FreePower::tail_at(double x) const
{
    if (below_omega_form()) {
        const double d = -norming.a * x;
        return d > 0 ? base.tail_below_omega(d) : 0.0;
    }
    return base.survival(affine(x));
}

double FreePower::pdf_at(double x) const
{
    if (below_omega_form()) {
        const double d = -norming.a * x;
        if (!(d > 0))
            throw DomainError(base.name + ": density requested at or beyond omega");
        return base.pdf_below_omega(d);
    }
    return pdf_of(base, affine(x));
}

FreePower make_free_power(const CatalogEntry& entry, std::int64_t n)
{
    return FreePower(entry.spec, n, norming_for(entry, n));
}

double free_max_cdf(const DistributionSpec& f, const DistributionSpec& g, double x)
{
    if (f.sf && g.sf)
        return std::max(1 - (f.sf(x) + g.sf(x)), 0.0);
    return std::max(f.cdf(x) + g.cdf(x) - 1, 0.0);
}

double free_power_cdf(const FreePower& fp, double x)
{
    if (fp.n == 1)
        return fp.base.cdf(fp.affine(x));
    if (!fp.base.sf && !fp.base.tail_below_omega) {
        const double f = fp.base.cdf(fp.affine(x));
        return std::max(static_cast<double>(fp.n) * f - static_cast<double>(fp.n - 1), 0.0);
    }
    return std::max(1 - static_cast<double>(fp.n) * fp.tail_at(x), 0.0);
}

double density_wn(const FreePower& fp, double x)
{
    if (!fp.window().contains(x))
        throw DomainError(fp.base.name + ": w_n is only defined inside (A_n, B_n)");
    return static_cast<double>(fp.n) * fp.norming.a * fp.pdf_at(x);
}

SupportWindow support_window(const FreePower& fp) { return fp.window(); }

} // namespace freemax
