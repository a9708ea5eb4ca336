#include "freemax/evd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "freemax/errors.hpp"
#include "freemax/numeric.hpp"

namespace freemax {

double FreeEvd::cdf(double x) const
{
    if (alpha_ > 0)
        return x >= 1 ? 1 - std::pow(x, -alpha_) : 0.0;
    if (alpha_ < 0) {
        if (x < -1)
            return 0.0;
        if (x <= 0)
            return 1 - std::pow(-x, -alpha_);
        return 1.0;
    }
    return x >= 0 ? -std::expm1(-x) : 0.0;
}

double FreeEvd::density(double x) const
{
    if (alpha_ > 0)
        return x > 1 ? alpha_ * std::pow(x, -alpha_ - 1) : 0.0;
    if (alpha_ < 0)
        return (x > -1 && x < 0) ? -alpha_ * std::pow(-x, -alpha_ - 1) : 0.0;
    return x > 0 ? std::exp(-x) : 0.0;
}

double FreeEvd::domain_lower() const
{
    if (alpha_ > 0)
        return 1.0;
    if (alpha_ < 0)
        return -1.0;
    return 0.0;
}

double FreeEvd::domain_upper() const
{
    return alpha_ < 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double ClassicalEvd::cdf(double x) const
{
    if (alpha_ > 0)
        return x > 0 ? std::exp(-std::pow(x, -alpha_)) : 0.0;
    if (alpha_ < 0)
        return x < 0 ? std::exp(-std::pow(-x, -alpha_)) : 1.0;
    return std::exp(-std::exp(-x));
}

namespace {

// sup_{x>1} (x^{-lo} - x^{-hi}) for 0 < lo < hi, measured two ways. In
// y = log x the gap is e^{-lo y} - e^{-hi y}, stationary at
// y* = log(hi/lo) / (hi - lo).
GapBound power_gap(double e1, double e2)
{
    GapBound out;
    out.bound = std::exp(-1.0) * std::abs(e2 - e1) / std::max(e1, e2);
    if (e1 == e2) {
        out.argmax = 1.0;
        return out;
    }
    const double lo = std::min(e1, e2);
    const double hi = std::max(e1, e2);
    const double y_star = std::log(hi / lo) / (hi - lo);
    out.sup_gap = std::exp(-lo * y_star) - std::exp(-hi * y_star);
    out.argmax = std::exp(y_star);

    // Beyond y_max both terms are below 1e-16.
    const double y_max = 37.0 / lo;
    auto gap = [lo, hi](double y) { return std::exp(-lo * y) - std::exp(-hi * y); };
    const auto nodes = numeric::geometric_offsets(0.0, y_max, 1e-10, 4000);
    out.grid_sup = numeric::grid_max(gap, nodes).value;

    out.violated = std::max(out.sup_gap, out.grid_sup) > out.bound + 1e-12;
    return out;
}

} // namespace

GapBound frechet_gap_bound(double alpha1, double alpha2)
{
    if (!(alpha1 > 0) || !(alpha2 > 0))
        throw InvalidArgument("frechet_gap_bound needs positive indices");
    return power_gap(alpha1, alpha2);
}

GapBound xphi_gap_bound(double beta1, double beta2)
{
    if (!(beta1 > 1) || !(beta2 > 1))
        throw InvalidArgument("xphi_gap_bound needs indices > 1");
    // x Phi_b^free(x) = x - x^{1-b} on x > 1.
    return power_gap(beta1 - 1, beta2 - 1);
}

double u_plus_raw(double a, double x)
{
    if (!(a > 0))
        throw InvalidArgument("U_+ needs a > 0");
    if (!(x > -1 / a))
        return 0.0;
    return -std::expm1(-std::log1p(a * x) / a);
}

double u_minus_raw(double a, double x)
{
    if (!(a > 0))
        throw InvalidArgument("U_- needs a > 0");
    if (x >= 1 / a)
        return 1.0;
    return -std::expm1(std::log1p(-a * x) / a);
}

double u_plus(double a, double x) { return std::max(u_plus_raw(a, x), 0.0); }

double u_minus(double a, double x) { return std::max(u_minus_raw(a, x), 0.0); }

UGapBound u_gap_bound(double a)
{
    if (!(a > 0))
        throw InvalidArgument("u_gap_bound needs a > 0");
    const FreeEvd gumbel(0.0);
    UGapBound out;
    out.bound = std::exp(-1.0) * a;
    out.outside_hypothesis = a >= 1;

    // On x <= 0 both clamped U's and Phi_0^free vanish, so the gap is 0 there.
    auto plus_gap = [&](double x) { return std::abs(u_plus(a, x) - gumbel.cdf(x)); };
    auto minus_gap = [&](double x) { return std::abs(u_minus(a, x) - gumbel.cdf(x)); };

    const double x_max = 40.0 / std::min(a, 1.0) + 40.0;
    const auto plus_nodes = numeric::geometric_offsets(0.0, x_max, 1e-12, 6000);
    out.sup_gap_plus = numeric::grid_max(plus_gap, plus_nodes).value;

    const double edge = 1 / a;
    const auto inner = numeric::geometric_offsets(0.0, edge, 1e-12, 6000);
    std::vector<double> inner_open(inner.begin(), inner.end() - 1);
    double minus_sup = numeric::grid_max(minus_gap, inner_open).value;
    // On [1/a, inf) the gap is e^{-x}, largest at 1/a.
    minus_sup = std::max(minus_sup, std::exp(-edge));
    out.sup_gap_minus = minus_sup;

    out.violated = std::max(out.sup_gap_plus, out.sup_gap_minus) > out.bound + 1e-12;
    return out;
}

namespace {

constexpr double kSandwichTol = 1e-10;

double neg_log_at_distance(const DistributionSpec& spec, double d)
{
    if (spec.tail_below_omega) {
        const double t = spec.tail_below_omega(d);
        return -std::log1p(-t);
    }
    return spec.neg_log_cdf(spec.omega.value() - d);
}

} // namespace

SandwichReport sandwich_check(const CatalogEntry& entry, std::int64_t n,
                              const std::vector<double>& x_grid)
{
    if (!entry.envelope)
        throw InvalidArgument(entry.spec.name + ": sandwich check needs a certified envelope");
    const NormingPair norming = norming_for(entry, n);
    const double nn = static_cast<double>(n);
    SandwichReport out;
    out.lower_violation = -std::numeric_limits<double>::infinity();
    out.upper_violation = -std::numeric_limits<double>::infinity();

    auto record = [&](double lower, double mid, double upper) {
        out.lower_violation = std::max(out.lower_violation, lower - mid);
        out.upper_violation = std::max(out.upper_violation, mid - upper);
        ++out.points;
    };

    switch (entry.regime.kind) {
    case RegimeKind::Frechet:
    case RegimeKind::Weibull: {
        const bool weibull = entry.regime.kind == RegimeKind::Weibull;
        const double index = weibull ? -entry.alpha : entry.alpha;
        const double g = weibull ? entry.envelope(norming.b - norming.a) : entry.envelope(norming.a);
        out.g_at_norm = g;
        for (double x : x_grid) {
            if (!(x >= 1))
                throw InvalidArgument("sandwich grid must lie in [1, inf) for this regime");
            const double neg_log = weibull ? neg_log_at_distance(entry.spec, norming.a / x)
                                           : entry.spec.neg_log_cdf(norming.a * x);
            const double base = std::pow(x, -index);
            const double mid = nn * neg_log - base;
            const double lower = std::pow(x, -(index + g)) - base;
            const double upper = std::pow(x, -(index - g)) - base;
            record(lower, mid, upper);
        }
        break;
    }
    case RegimeKind::Gumbel: {
        const double g = entry.envelope(norming.b);
        out.g_at_norm = g;
        const FreeEvd limit(0.0);
        for (double x : x_grid) {
            if (!(x > 0))
                throw InvalidArgument("sandwich grid must lie in (0, inf) for the Gumbel regime");
            const double mid = 1 - nn * entry.spec.neg_log_cdf(norming.a * x + norming.b);
            const double lower = g > 0 ? u_plus(g, x) : limit.cdf(x);
            const double upper = g > 0 ? u_minus(g, x) : limit.cdf(x);
            record(lower, mid, upper);
        }
        break;
    }
    }
    out.holds = out.lower_violation <= kSandwichTol && out.upper_violation <= kSandwichTol;
    return out;
}

double classical_power_cdf(const CatalogEntry& entry, const NormingPair& norming, double x)
{
    const auto& spec = entry.spec;
    if (norming.n == 1)
        return spec.cdf(norming.a * x + norming.b);
    double neg_log;
    if (spec.omega.is_finite() && spec.tail_below_omega && norming.b == spec.omega.value()) {
        const double d = -norming.a * x;
        if (!(d > 0))
            return 1.0;
        neg_log = -std::log1p(-spec.tail_below_omega(d));
    } else {
        neg_log = spec.neg_log_cdf(norming.a * x + norming.b);
    }
    return std::exp(-static_cast<double>(norming.n) * neg_log);
}

double classical_power_cdf(const CatalogEntry& entry, std::int64_t n, double x)
{
    return classical_power_cdf(entry, norming_for(entry, n), x);
}

} // namespace freemax
