#include "freemax/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "freemax/errors.hpp"
#include "freemax/evd.hpp"
#include "freemax/free_maxconv.hpp"
#include "freemax/norming.hpp"
#include "freemax/numeric.hpp"

namespace freemax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double limit_index(const CatalogEntry& entry)
{
    return entry.regime.kind == RegimeKind::Gumbel ? 0.0 : entry.alpha;
}

// Error function |w_n - phi^free| on the window; zero outside it so that
// refinement probes never throw.
auto density_error(const FreePower& fp, const FreeEvd& limit)
{
    return [&fp, &limit](double x) {
        if (!fp.window().contains(x))
            return 0.0;
        return std::abs(density_wn(fp, x) - limit.density(x));
    };
}

double reference_value(const ConvergenceRow& row, RateReference ref)
{
    switch (ref) {
    case RateReference::NInv:
        return row.n_inv;
    case RateReference::GAtNorm:
        return row.g_at_norm;
    case RateReference::MaxOfBoth:
        return std::isnan(row.g_at_norm) ? row.n_inv : std::max(row.n_inv, row.g_at_norm);
    }
    return row.n_inv;
}

void validate(const ExperimentConfig& cfg)
{
    if (cfg.n_list.empty())
        throw InvalidArgument("n_list is empty");
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (cfg.n_list[i] < 2)
            throw InvalidArgument("every n must be at least 2");
        if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
            throw InvalidArgument("n_list must be strictly increasing");
    }
    if (cfg.grid_points < 1000)
        throw InvalidArgument("grid_points must be at least 1000");
    if (cfg.domain_override) {
        const auto [lo, hi] = *cfg.domain_override;
        if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw InvalidArgument("domain override must be a finite interval lo < hi");
        const Interval dom = theorem_domain(cfg.entry.regime);
        if (lo <= dom.lo || hi >= dom.hi)
            throw InvalidArgument("domain override must be a compact subset of the theorem domain");
    }
    const auto& regime = cfg.entry.regime;
    if (regime.kind == RegimeKind::Weibull && regime.alpha >= -1 && !cfg.domain_override)
        throw InvalidArgument("Weibull regime with -1 <= alpha < 0 needs a compact domain override");
}

} // namespace

Interval theorem_domain(const Regime& regime)
{
    switch (regime.kind) {
    case RegimeKind::Frechet:
        return {1.0, kInf};
    case RegimeKind::Weibull:
        return {-1.0, 0.0};
    case RegimeKind::Gumbel:
        return {0.0, kInf};
    }
    return {0.0, kInf};
}

std::vector<double> sup_grid(const Regime& regime, std::size_t grid_points,
                             const std::optional<Interval>& domain_override)
{
    if (grid_points < 2)
        throw InvalidArgument("sup_grid needs at least two points");
    if (domain_override)
        return numeric::linspace(domain_override->lo, domain_override->hi, grid_points);

    switch (regime.kind) {
    case RegimeKind::Frechet: {
        // phi^free(x_max) < 1e-12 with a factor 2 margin; past the last local maximum both densities
        // decrease, so the error there is below max(w_n(x_max), phi(x_max)).
        const double alpha = regime.alpha;
        const double x_max = std::max(2.0, 2 * std::pow(alpha * 1e12, 1 / (alpha + 1)));
        return numeric::geometric_offsets(1.0, x_max, 1e-6 / (x_max - 1), grid_points);
    }
    case RegimeKind::Weibull: {
        // Outer 1% strips at each end are 100x denser than the middle.
        const std::size_t mid = std::max<std::size_t>(2, grid_points * 98 / 302);
        const std::size_t strip = std::max<std::size_t>(2, (grid_points - mid) / 2);
        std::vector<double> out;
        out.reserve(mid + 2 * strip);
        const double h = 0.01 / static_cast<double>(strip);
        for (std::size_t i = 1; i <= strip; ++i)
            out.push_back(-1.0 + h * static_cast<double>(i));
        const auto middle = numeric::linspace(-0.99, -0.01, mid);
        out.insert(out.end(), middle.begin() + 1, middle.end() - 1);
        for (std::size_t i = 0; i < strip; ++i)
            out.push_back(-0.01 + h * static_cast<double>(i));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }
    case RegimeKind::Gumbel:
        // e^{-x} < 1e-12 well before 40.
        return numeric::geometric_offsets(0.0, 40.0, 1e-6 / 40.0, grid_points);
    }
    return {};
}

SupResult sup_error(const CatalogEntry& entry, std::int64_t n, std::size_t grid_points,
                    const std::optional<Interval>& domain_override)
{
    if (n < 2)
        throw InvalidArgument("sup_error needs n >= 2");
    const FreePower fp = make_free_power(entry, n);
    const FreeEvd limit(limit_index(entry));
    const Interval dom = domain_override ? *domain_override : theorem_domain(entry.regime);

    std::vector<double> nodes;
    for (double x : sup_grid(entry.regime, grid_points, domain_override)) {
        const bool in_domain = domain_override ? (x >= dom.lo && x <= dom.hi)
                                               : (x > dom.lo && x < dom.hi);
        if (in_domain && fp.window().contains(x))
            nodes.push_back(x);
    }
    if (nodes.empty())
        throw InvalidArgument(entry.spec.name + ": domain and support window do not overlap at n = " +
                              std::to_string(n));
    const auto m = numeric::grid_max(density_error(fp, limit), nodes);
    return {m.value, m.x};
}

double envelope_at_norm(const CatalogEntry& entry, std::int64_t n)
{
    if (!entry.envelope)
        return kNaN;
    return entry.envelope(norming_target(entry.regime, norming_for(entry, n)));
}

double fit_rate(const std::vector<ConvergenceRow>& rows)
{
    const std::size_t start = rows.size() / 2;
    if (rows.size() - start < 2)
        return kNaN;
    std::vector<double> lx, ly;
    for (std::size_t i = start; i < rows.size(); ++i) {
        lx.push_back(std::log(static_cast<double>(rows[i].n)));
        ly.push_back(std::log(rows[i].sup_error));
    }
    return numeric::least_squares_slope(lx, ly);
}

ConvergenceReport run_experiment(const ExperimentConfig& cfg)
{
    validate(cfg);
    ConvergenceReport report;
    report.per_n.resize(cfg.n_list.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < cfg.n_list.size(); i = next++) {
            try {
                const std::int64_t n = cfg.n_list[i];
                const FreePower fp = make_free_power(cfg.entry, n);
                const SupResult s = sup_error(cfg.entry, n, cfg.grid_points, cfg.domain_override);
                ConvergenceRow row;
                row.n = n;
                row.sup_error = s.sup;
                row.argmax_x = s.argmax;
                row.a_lower = fp.window().a_lower;
                row.b_upper = fp.window().b_upper.as_double();
                row.g_at_norm = envelope_at_norm(cfg.entry, n);
                row.n_inv = 1.0 / static_cast<double>(n);
                report.per_n[i] = row;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    const unsigned workers =
        std::min<unsigned>(worker_count(), static_cast<unsigned>(cfg.n_list.size()));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    report.fitted_slope = fit_rate(report.per_n);

    const auto& rows = report.per_n;
    const std::size_t start = rows.size() / 2;
    double c = 0.0;
    for (std::size_t i = start; i < rows.size(); ++i)
        c = std::max(c, rows[i].sup_error / reference_value(rows[i], cfg.rate_reference));
    report.constant = c;
    bool ok = std::isfinite(c);
    for (std::size_t i = 0; ok && i < start; ++i)
        ok = rows[i].sup_error <= 2 * c * reference_value(rows[i], cfg.rate_reference);
    report.bound_satisfied = ok;

    report.n_threshold = 0;
    if (std::isfinite(c)) {
        for (std::size_t i = rows.size(); i-- > 0;) {
            const double bound = c * reference_value(rows[i], cfg.rate_reference);
            if (!(rows[i].sup_error <= bound * (1 + 1e-12)))
                break;
            report.n_threshold = rows[i].n;
        }
    }
    return report;
}

double boundary_gap(const CatalogEntry& entry, std::int64_t n)
{
    if (entry.regime.kind != RegimeKind::Frechet)
        throw InvalidArgument("boundary_gap needs a Frechet-regime entry");
    const FreePower fp = make_free_power(entry, n);
    const FreeEvd limit(entry.alpha);
    const double lo = fp.window().a_lower;
    if (!(lo < 1.0))
        throw InvalidArgument("boundary_gap: window starts at or beyond 1");
    // Dense toward A_n, where the error is largest.
    const auto nodes = numeric::geometric_offsets(lo, 1.0, 1e-12, 4000);
    return numeric::grid_max(density_error(fp, limit), nodes).value;
}

double frechet_boundary_limit(double alpha, std::int64_t n)
{
    if (!(alpha > 0) || n < 2)
        throw InvalidArgument("frechet_boundary_limit needs alpha > 0 and n >= 2");
    const double nn = static_cast<double>(n);
    const double t = -nn * std::log1p(-1 / nn);
    return alpha * std::pow(t, 1 + 1 / alpha) * (1 - 1 / nn);
}

Witness nonconvergence_witness(double alpha, std::int64_t n)
{
    if (!(alpha > -0.5 && alpha < 0))
        throw InvalidArgument("nonconvergence_witness needs -1/2 < alpha < 0");
    if (n < 2)
        throw InvalidArgument("nonconvergence_witness needs n >= 2");
    const CatalogEntry entry = builtin("weibull", {alpha});
    const FreePower fp = make_free_power(entry, n);
    const double nn = static_cast<double>(n);
    const double c = std::pow((-alpha / nn) * (1 - 1 / (2 * nn)), 1 / (2 * alpha + 1));
    Witness w;
    w.window_lower = -c;
    w.x = -0.5 * c;
    if (!fp.window().contains(w.x))
        throw SolverError("witness point falls outside the support window");
    // With a_n = n^{1/alpha}, n a_n F'(a_n x) = phi(x) exp(-(-x)^{-alpha}/n). At the
    // witness phi is enormous while the two densities differ by about 1, so
    // the plain difference loses almost every digit.
    const double phi = FreeEvd(alpha).density(w.x);
    w.error = phi * -std::expm1(-std::pow(-w.x, -alpha) / nn);
    w.direct_error = std::abs(density_wn(fp, w.x) - phi);
    return w;
}

double weak_convergence_check(const CatalogEntry& entry, std::int64_t n,
                              const std::vector<double>& x_grid)
{
    const FreePower fp = make_free_power(entry, n);
    const FreeEvd limit(limit_index(entry));
    double worst = 0.0;
    for (double x : x_grid)
        worst = std::max(worst, std::abs(free_power_cdf(fp, x) - limit.cdf(x)));
    return worst;
}

std::vector<double> weak_grid(const Regime& regime, std::size_t points)
{
    switch (regime.kind) {
    case RegimeKind::Frechet: {
        // Up to where 1 - Phi^free is 1e-8.
        const double x_max = std::pow(1e8, 1 / regime.alpha);
        return numeric::geometric_offsets(0.0, x_max, 0.25 / x_max, points);
    }
    case RegimeKind::Weibull:
        return numeric::linspace(-1.5, 0.5, points);
    case RegimeKind::Gumbel:
        return numeric::linspace(-2.0, 20.0, points);
    }
    return {};
}

std::vector<std::int64_t> log_spaced_n(std::int64_t n_min, std::int64_t n_max, int per_decade)
{
    if (n_min < 1 || n_max < n_min || per_decade < 1)
        throw InvalidArgument("log_spaced_n needs 1 <= n_min <= n_max and per_decade >= 1");
    const double k_lo = std::ceil(per_decade * std::log10(static_cast<double>(n_min)) - 1e-9);
    const double k_hi = std::floor(per_decade * std::log10(static_cast<double>(n_max)) + 1e-9);
    std::vector<std::int64_t> out;
    for (double k = k_lo; k <= k_hi; k += 1) {
        const auto n = static_cast<std::int64_t>(std::llround(std::pow(10.0, k / per_decade)));
        if (out.empty() || n > out.back())
            out.push_back(n);
    }
    return out;
}

unsigned worker_count()
{
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("FREEMAX_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap > 0)
            workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    }
    return workers;
}

} // namespace freemax
