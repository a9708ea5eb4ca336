#include "freemax/norming.hpp"

#include <cmath>
#include <string>

#include "freemax/errors.hpp"

namespace freemax {

namespace {

void require_n(std::int64_t n)
{
    if (n < 1 || n > kMaxPower)
        throw InvalidArgument("n must lie in [1, 1e9], got " + std::to_string(n));
}

// F^{<-} returns the infimum, so F(target) = e^{-1/n} has further roots
// exactly when the tail does not drop just right of the target.
bool flat_right_of(const DistributionSpec& spec, double x, double tail)
{
    double step = 1e-6 * std::max(1.0, std::abs(x));
    if (spec.omega.is_finite())
        step = std::min(step, 0.5 * (spec.omega.value() - x));
    if (!(step > 0))
        return false;
    return spec.survival(x + step) >= tail * (1 - 1e-12);
}

} // namespace

double tail_mass(std::int64_t n) { return -std::expm1(-1.0 / static_cast<double>(n)); }

NormingPair norming_frechet(const DistributionSpec& spec, std::int64_t n)
{
    require_n(n);
    if (spec.omega.is_finite())
        throw InvalidArgument(spec.name + ": Frechet norming needs omega = +inf");
    const double q = tail_mass(n);
    NormingPair out;
    out.n = n;
    out.a = solve_upper_quantile(spec, q);
    out.b = 0.0;
    out.residual = std::abs(spec.survival(out.a) - q);
    out.non_unique = flat_right_of(spec, out.a, q);
    if (!(out.a > 0))
        throw SolverError(spec.name + ": Frechet norming produced a_n <= 0");
    return out;
}

NormingPair norming_weibull(const DistributionSpec& spec, std::int64_t n)
{
    require_n(n);
    if (!spec.omega.is_finite())
        throw InvalidArgument(spec.name + ": Weibull norming needs a finite omega");
    const double q = tail_mass(n);
    const double w = spec.omega.value();
    NormingPair out;
    out.n = n;
    out.a = solve_distance_below_omega(spec, q);
    out.b = w;
    out.residual = spec.tail_below_omega ? std::abs(spec.tail_below_omega(out.a) - q)
                                         : std::abs(spec.survival(w - out.a) - q);
    if (spec.tail_below_omega) {
        const double step = 1e-6 * out.a;
        out.non_unique = spec.tail_below_omega(out.a - step) >= q * (1 - 1e-12);
    } else {
        out.non_unique = flat_right_of(spec, w - out.a, q);
    }
    if (!(out.a > 0))
        throw SolverError(spec.name + ": Weibull norming produced a_n <= 0");
    return out;
}

NormingPair norming_gumbel(const DistributionSpec& spec, std::int64_t n)
{
    require_n(n);
    const double q = tail_mass(n);
    NormingPair out;
    out.n = n;
    out.b = solve_upper_quantile(spec, q);
    const double density = pdf_of(spec, out.b);
    if (!(density > 0) || !std::isfinite(density))
        throw InvalidArgument(spec.name + ": F'(b_n) must be positive and finite");
    out.a = spec.cdf(out.b) / (static_cast<double>(n) * density);
    out.residual = std::abs(spec.survival(out.b) - q);
    out.non_unique = flat_right_of(spec, out.b, q);
    return out;
}

NormingPair norming_for(const DistributionSpec& spec, const Regime& regime, std::int64_t n)
{
    switch (regime.kind) {
    case RegimeKind::Frechet:
        return norming_frechet(spec, n);
    case RegimeKind::Weibull:
        return norming_weibull(spec, n);
    case RegimeKind::Gumbel:
        return norming_gumbel(spec, n);
    }
    throw InvalidArgument("unknown regime");
}

NormingPair norming_for(const CatalogEntry& entry, std::int64_t n)
{
    return norming_for(entry.spec, entry.regime, n);
}

double norming_target(const Regime& regime, const NormingPair& norming)
{
    switch (regime.kind) {
    case RegimeKind::Frechet:
        return norming.a;
    case RegimeKind::Weibull:
        return norming.b - norming.a;
    case RegimeKind::Gumbel:
        return norming.b;
    }
    return norming.b;
}

} // namespace freemax
