#include "freemax/von_mises.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "freemax/errors.hpp"
#include "freemax/norming.hpp"

namespace freemax {

namespace {

// phi'(x) = F'(x) / (F(x) (-log F(x))), with F in (0,1) enforced.
double phi_prime(const DistributionSpec& spec, double x)
{
    const double f = spec.cdf(x);
    const double neg_log = spec.neg_log_cdf(x);
    if (!(f > 0) || !(neg_log > 0) || !std::isfinite(neg_log))
        throw DomainError(spec.name + ": von Mises functional needs 0 < F(x) < 1");
    return pdf_of(spec, x) / (f * neg_log);
}

} // namespace

double h_frechet(const DistributionSpec& spec, double alpha, double x)
{
    if (!(alpha > 0))
        throw InvalidArgument("h_frechet needs alpha > 0");
    return x * phi_prime(spec, x) - alpha;
}

double h_weibull(const DistributionSpec& spec, double alpha, double x)
{
    if (!(alpha < 0))
        throw InvalidArgument("h_weibull needs alpha < 0");
    if (!spec.omega.is_finite())
        throw InvalidArgument(spec.name + ": h_weibull needs a finite omega");
    return (spec.omega.value() - x) * phi_prime(spec, x) + alpha;
}

double h_gumbel(const DistributionSpec& spec, double x)
{
    const double f = spec.cdf(x);
    const double neg_log = spec.neg_log_cdf(x);
    if (!(f > 0) || !(neg_log > 0) || !std::isfinite(neg_log))
        throw DomainError(spec.name + ": h_gumbel needs 0 < F(x) < 1");
    const double d1 = pdf_of(spec, x);
    if (!(d1 > 0))
        throw DomainError(spec.name + ": h_gumbel needs F'(x) > 0");
    const double d2 = pdf2_of(spec, x);
    if (!std::isfinite(d2))
        throw DomainError(spec.name + ": second derivative not finite");
    // Divide by F' twice rather than by F'^2, which underflows in light tails.
    return neg_log - (f * (d2 / d1) * (neg_log / d1) + 1);
}

double h_for(const DistributionSpec& spec, const Regime& regime, double x)
{
    switch (regime.kind) {
    case RegimeKind::Frechet:
        return h_frechet(spec, regime.alpha, x);
    case RegimeKind::Weibull:
        return h_weibull(spec, regime.alpha, x);
    case RegimeKind::Gumbel:
        return h_gumbel(spec, x);
    }
    throw InvalidArgument("unknown regime");
}

double auxiliary_f(const DistributionSpec& spec, double x)
{
    const double d1 = pdf_of(spec, x);
    if (!(d1 > 0))
        throw DomainError(spec.name + ": auxiliary function needs F'(x) > 0");
    return spec.cdf(x) * spec.neg_log_cdf(x) / d1;
}

DistributionSpec reflect_weibull(const DistributionSpec& spec)
{
    if (!spec.omega.is_finite())
        throw InvalidArgument(spec.name + ": reflection needs a finite omega");
    const double w = spec.omega.value();
    DistributionSpec r;
    r.name = spec.name + "_reflected";
    r.cdf = [spec, w](double x) { return x > 0 ? spec.cdf(w - 1 / x) : 0.0; };
    r.sf = [spec, w](double x) { return x > 0 ? spec.survival(w - 1 / x) : 1.0; };
    r.pdf = [spec, w](double x) {
        if (!(x > 0))
            return 0.0;
        const double y = w - 1 / x;
        return spec.is_interior(y) ? pdf_of(spec, y) / (x * x) : 0.0;
    };
    r.omega = ExtendedReal::pos_infinity();
    const double left = spec.support_left.as_double();
    // F_* vanishes for x <= 1 / (omega - left).
    r.support_left = std::isfinite(left) ? ExtendedReal::finite(1 / (w - left))
                                         : ExtendedReal::finite(0.0);
    return r;
}

VonMisesReport check_membership(const CatalogEntry& entry, const std::vector<std::int64_t>& n_grid,
                                const std::vector<double>& x_grid, EnvelopeMode mode)
{
    VonMisesReport report;
    report.regime = entry.regime;
    if (mode == EnvelopeMode::Catalog && !entry.envelope)
        mode = EnvelopeMode::Auto;
    report.certified = mode == EnvelopeMode::Catalog;

    std::vector<double> xs(x_grid);
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
        double h;
        try {
            h = h_for(entry.spec, entry.regime, x);
        } catch (const DomainError&) {
            ++report.skipped;
            continue;
        }
        if (!std::isfinite(h)) {
            ++report.skipped;
            continue;
        }
        report.h_values.emplace_back(x, h);
    }

    // Running maximum of |h| from the right.
    std::vector<double> running(report.h_values.size());
    double acc = 0.0;
    for (std::size_t i = running.size(); i-- > 0;) {
        acc = std::max(acc, std::abs(report.h_values[i].second));
        running[i] = acc;
    }
    auto auto_envelope = [&](double x) {
        auto it = std::lower_bound(report.h_values.begin(), report.h_values.end(), x,
                                   [](const auto& p, double v) { return p.first < v; });
        const std::size_t idx = static_cast<std::size_t>(it - report.h_values.begin());
        return idx < running.size() ? running[idx] : 0.0;
    };
    auto envelope = [&](double x) {
        return report.certified ? entry.envelope(x) : auto_envelope(x);
    };

    for (std::size_t i = 0; i < report.h_values.size(); ++i) {
        const auto [x, h] = report.h_values[i];
        const double g = report.certified ? entry.envelope(x) : running[i];
        report.envelope_values.emplace_back(x, g);
        if (!(std::abs(h) <= g + 1e-12))
            report.domination_ok = false;
    }
    for (std::size_t i = 1; i < report.envelope_values.size(); ++i) {
        const double prev = report.envelope_values[i - 1].second;
        const double cur = report.envelope_values[i].second;
        if (cur > prev + 1e-12 * std::max(1.0, std::abs(prev)))
            report.monotone_ok = false;
    }

    for (std::int64_t n : n_grid) {
        const NormingPair norming = norming_for(entry, n);
        const double point = norming_target(entry.regime, norming);
        NormPointValue v{n, point, std::numeric_limits<double>::quiet_NaN(), envelope(point)};
        try {
            v.h = h_for(entry.spec, entry.regime, point);
        } catch (const DomainError&) {
        }
        if (!report.certified)
            v.g = std::max(v.g, std::isfinite(v.h) ? std::abs(v.h) : 0.0);
        report.at_norm.push_back(v);
    }
    return report;
}

} // namespace freemax
