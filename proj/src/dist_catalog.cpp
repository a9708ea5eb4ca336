#include "freemax/dist_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "freemax/errors.hpp"
#include "freemax/numeric.hpp"

namespace freemax {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Survival function over pdf for the standard normal by backward
// evaluation of the Laplace continued fraction. Converged for x > 5.
double normal_mills_ratio(double x)
{
    double t = x;
    for (int k = 120; k >= 1; --k)
        t = x + k / t;
    return 1.0 / t;
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * kPi); }

void require_count(std::string_view name, const std::vector<double>& params, std::size_t count)
{
    if (params.size() != count)
        throw InvalidArgument(std::string(name) + ": expected " + std::to_string(count) +
                              " parameter(s), got " + std::to_string(params.size()));
}

void require(bool ok, std::string_view name, const char* what)
{
    if (!ok)
        throw InvalidArgument(std::string(name) + ": " + what);
}

CatalogEntry make_frechet(double alpha)
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "frechet";
    s.cdf = [alpha](double x) { return x > 0 ? std::exp(-std::pow(x, -alpha)) : 0.0; };
    s.sf = [alpha](double x) { return x > 0 ? -std::expm1(-std::pow(x, -alpha)) : 1.0; };
    s.pdf = [alpha](double x) {
        return x > 0 ? alpha * std::pow(x, -alpha - 1) * std::exp(-std::pow(x, -alpha)) : 0.0;
    };
    s.pdf2 = [alpha](double x) {
        if (x <= 0)
            return 0.0;
        const double t = std::pow(x, -alpha);
        return alpha * std::pow(x, -alpha - 2) * std::exp(-t) * (-alpha - 1 + alpha * t);
    };
    s.quantile = [alpha](double p) { return std::pow(-std::log(p), -1.0 / alpha); };
    s.support_left = ExtendedReal::finite(0.0);
    e.regime = Regime::frechet(alpha);
    e.alpha = alpha;
    e.envelope = [](double) { return 0.0; };
    e.params = {alpha};
    return e;
}

CatalogEntry make_log_logistic(double alpha)
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "log_logistic";
    s.cdf = [alpha](double x) {
        if (x <= 0)
            return 0.0;
        const double u = std::pow(x, alpha);
        return u / (1 + u);
    };
    s.sf = [alpha](double x) { return x > 0 ? 1 / (1 + std::pow(x, alpha)) : 1.0; };
    s.pdf = [alpha](double x) {
        if (x <= 0)
            return 0.0;
        const double u = std::pow(x, alpha);
        return alpha * std::pow(x, alpha - 1) / ((1 + u) * (1 + u));
    };
    s.pdf2 = [alpha](double x) {
        if (x <= 0)
            return 0.0;
        const double u = std::pow(x, alpha);
        return alpha * std::pow(x, alpha - 2) * ((alpha - 1) * (1 + u) - 2 * alpha * u) /
               std::pow(1 + u, 3);
    };
    s.quantile = [alpha](double p) { return std::pow(p / (1 - p), 1.0 / alpha); };
    s.support_left = ExtendedReal::finite(0.0);
    e.regime = Regime::frechet(alpha);
    e.alpha = alpha;
    e.envelope = [alpha](double x) { return x > 0 ? alpha / (1 + std::pow(x, alpha)) : alpha; };
    e.params = {alpha};
    return e;
}

CatalogEntry make_cauchy()
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "cauchy";
    // atan2 keeps both tails accurate.
    s.cdf = [](double x) { return std::atan2(1.0, -x) / kPi; };
    s.sf = [](double x) { return std::atan2(1.0, x) / kPi; };
    s.pdf = [](double x) { return 1 / (kPi * (1 + x * x)); };
    s.pdf2 = [](double x) { return -2 * x / (kPi * (1 + x * x) * (1 + x * x)); };
    s.quantile = [](double p) { return std::tan(kPi * (p - 0.5)); };
    e.regime = Regime::frechet(1.0);
    e.alpha = 1.0;
    auto spec = s;
    e.envelope = [spec](double x) {
        if (x <= 0)
            return kInf;
        return 1 - x / (kPi * (1 + x * x) * spec.neg_log_cdf(x));
    };
    e.params = {};
    return e;
}

CatalogEntry make_weibull(double alpha)
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "weibull";
    s.cdf = [alpha](double x) { return x < 0 ? std::exp(-std::pow(-x, -alpha)) : 1.0; };
    s.sf = [alpha](double x) { return x < 0 ? -std::expm1(-std::pow(-x, -alpha)) : 0.0; };
    s.pdf = [alpha](double x) {
        return x < 0 ? -alpha * std::pow(-x, -alpha - 1) * std::exp(-std::pow(-x, -alpha)) : 0.0;
    };
    s.pdf2 = [alpha](double x) {
        if (x >= 0)
            return 0.0;
        const double u = -x;
        const double t = std::pow(u, -alpha);
        return alpha * std::exp(-t) * std::pow(u, -alpha - 2) * (-alpha - 1 + alpha * t);
    };
    s.quantile = [alpha](double p) { return -std::pow(-std::log(p), -1.0 / alpha); };
    s.tail_below_omega = [alpha](double d) { return -std::expm1(-std::pow(d, -alpha)); };
    s.pdf_below_omega = [alpha](double d) {
        return -alpha * std::pow(d, -alpha - 1) * std::exp(-std::pow(d, -alpha));
    };
    s.omega = ExtendedReal::finite(0.0);
    e.regime = Regime::weibull(alpha);
    e.alpha = alpha;
    e.envelope = [](double) { return 0.0; };
    e.params = {alpha};
    return e;
}

// 1 - F(x) = K (omega - x)^{-alpha} on [omega - K^{1/alpha}, omega].
CatalogEntry make_endpoint_power(double k, double alpha, double omega)
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "endpoint_power";
    const double d_max = std::pow(k, 1.0 / alpha);
    auto tail = [k, alpha, d_max](double d) {
        if (d <= 0)
            return 0.0;
        if (d >= d_max)
            return 1.0;
        return k * std::pow(d, -alpha);
    };
    auto density = [k, alpha, d_max](double d) {
        if (d <= 0 || d >= d_max)
            return 0.0;
        return -alpha * k * std::pow(d, -alpha - 1);
    };
    s.cdf = [tail, omega](double x) { return 1 - tail(omega - x); };
    s.sf = [tail, omega](double x) { return tail(omega - x); };
    s.pdf = [density, omega](double x) { return density(omega - x); };
    s.pdf2 = [k, alpha, omega, d_max](double x) {
        const double d = omega - x;
        if (d <= 0 || d >= d_max)
            return 0.0;
        return -k * alpha * (alpha + 1) * std::pow(d, -alpha - 2);
    };
    s.quantile = [k, alpha, omega](double p) {
        return omega - std::pow((1 - p) / k, -1.0 / alpha);
    };
    s.tail_below_omega = tail;
    s.pdf_below_omega = density;
    s.omega = ExtendedReal::finite(omega);
    s.support_left = ExtendedReal::finite(omega - d_max);
    e.regime = Regime::weibull(alpha);
    e.alpha = alpha;
    // |h_alpha| written out in closed form.
    e.envelope = [k, alpha, omega, d_max](double x) {
        const double d = omega - x;
        if (d >= d_max)
            return kInf;
        if (d <= 0)
            return 0.0;
        const double t = k * std::pow(d, -alpha);
        return std::abs(-alpha * t / ((1 - t) * -std::log1p(-t)) + alpha);
    };
    e.params = {k, alpha, omega};
    return e;
}

CatalogEntry make_uniform01()
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "uniform01";
    s.cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    s.sf = [](double x) { return 1 - std::clamp(x, 0.0, 1.0); };
    s.pdf = [](double x) { return (x > 0 && x < 1) ? 1.0 : 0.0; };
    s.pdf2 = [](double) { return 0.0; };
    s.quantile = [](double p) { return p; };
    s.tail_below_omega = [](double d) { return std::clamp(d, 0.0, 1.0); };
    s.pdf_below_omega = [](double d) { return (d > 0 && d < 1) ? 1.0 : 0.0; };
    s.omega = ExtendedReal::finite(1.0);
    s.support_left = ExtendedReal::finite(0.0);
    e.regime = Regime::weibull(-1.0);
    e.alpha = -1.0;
    e.envelope = [](double x) {
        if (x <= 0)
            return kInf;
        if (x >= 1)
            return 0.0;
        return (1 - x) / (x * -std::log(x)) - 1;
    };
    e.params = {};
    return e;
}

CatalogEntry make_gumbel()
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "gumbel";
    s.cdf = [](double x) { return std::exp(-std::exp(-x)); };
    s.sf = [](double x) { return -std::expm1(-std::exp(-x)); };
    s.pdf = [](double x) { return std::exp(-x - std::exp(-x)); };
    s.pdf2 = [](double x) { return std::exp(-x - std::exp(-x)) * (std::exp(-x) - 1); };
    s.quantile = [](double p) { return -std::log(-std::log(p)); };
    e.regime = Regime::gumbel();
    e.alpha = 0.0;
    e.envelope = [](double) { return 0.0; };
    e.params = {};
    return e;
}

// F = exp(-e^{-phi}) with phi(x) = sign(x)|x|^alpha, the odd extension of x^alpha.
CatalogEntry make_stretched_gumbel(double alpha)
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "stretched_gumbel";
    auto phi = [alpha](double x) { return std::copysign(std::pow(std::abs(x), alpha), x); };
    auto dphi = [alpha](double x) { return alpha * std::pow(std::abs(x), alpha - 1); };
    auto ddphi = [alpha](double x) {
        const double v = alpha * (alpha - 1) * std::pow(std::abs(x), alpha - 2);
        return x < 0 ? -v : v;
    };
    s.cdf = [phi](double x) { return std::exp(-std::exp(-phi(x))); };
    s.sf = [phi](double x) { return -std::expm1(-std::exp(-phi(x))); };
    s.pdf = [phi, dphi](double x) {
        const double u = std::exp(-phi(x));
        return std::exp(-u) * u * dphi(x);
    };
    s.pdf2 = [phi, dphi, ddphi](double x) {
        const double u = std::exp(-phi(x));
        const double d1 = dphi(x);
        return std::exp(-u) * u * (u * d1 * d1 - d1 * d1 + ddphi(x));
    };
    s.quantile = [alpha](double p) {
        const double y = -std::log(-std::log(p));
        return std::copysign(std::pow(std::abs(y), 1.0 / alpha), y);
    };
    e.regime = Regime::gumbel();
    e.alpha = 0.0;
    const double c = std::abs(-1 + 1 / alpha);
    e.envelope = [c, alpha](double x) { return x > 0 ? c * std::pow(x, -alpha) : kInf; };
    e.params = {alpha};
    return e;
}

CatalogEntry make_std_normal()
{
    CatalogEntry e;
    auto& s = e.spec;
    s.name = "std_normal";
    s.cdf = [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); };
    s.sf = [](double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); };
    s.pdf = normal_pdf;
    s.pdf2 = [](double x) { return -x * normal_pdf(x); };
    e.regime = Regime::gumbel();
    e.alpha = 0.0;
    auto spec = s;
    // g(x) = 1 + log F(x) (1 + x / p(x)).
    e.envelope = [spec](double x) {
        if (x <= 5) {
            const double log_f = -spec.neg_log_cdf(x);
            return 1 + log_f * (1 + x / normal_pdf(x));
        }
        const double mills = normal_mills_ratio(x);
        const double tail = mills * normal_pdf(x);
        const double log_f = std::log1p(-tail);
        const double ratio = tail > 0 ? log_f / tail : -1.0; // log F / S
        return 1 + log_f + x * ratio * mills;
    };
    e.params = {};
    return e;
}

} // namespace

double DistributionSpec::survival(double x) const { return sf ? sf(x) : 1 - cdf(x); }

double DistributionSpec::neg_log_cdf(double x) const
{
    const double f = cdf(x);
    if (f > 0.5)
        return -std::log1p(-survival(x));
    return -std::log(f);
}

bool DistributionSpec::is_interior(double x) const
{
    return x > support_left.as_double() && x < omega.as_double();
}

const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names = {
        "frechet", "log_logistic", "cauchy", "weibull", "endpoint_power",
        "uniform01", "gumbel", "stretched_gumbel", "std_normal"};
    return names;
}

std::vector<std::string> catalog_param_names(std::string_view name)
{
    if (name == "frechet" || name == "log_logistic" || name == "weibull" ||
        name == "stretched_gumbel")
        return {"alpha"};
    if (name == "endpoint_power")
        return {"K", "alpha", "omega"};
    if (name == "cauchy" || name == "uniform01" || name == "gumbel" || name == "std_normal")
        return {};
    throw InvalidArgument("unknown distribution: " + std::string(name));
}

std::vector<double> catalog_default_params(std::string_view name)
{
    if (name == "frechet" || name == "log_logistic" || name == "stretched_gumbel")
        return {2.0};
    if (name == "weibull")
        return {-2.0};
    if (name == "endpoint_power")
        return {1.0, -2.0, 1.0};
    if (name == "cauchy" || name == "uniform01" || name == "gumbel" || name == "std_normal")
        return {};
    throw InvalidArgument("unknown distribution: " + std::string(name));
}

CatalogEntry builtin(std::string_view name, const std::vector<double>& params)
{
    for (double p : params)
        require(std::isfinite(p), name, "parameters must be finite");

    if (name == "frechet") {
        require_count(name, params, 1);
        require(params[0] > 0, name, "alpha must be > 0");
        return make_frechet(params[0]);
    }
    if (name == "log_logistic") {
        require_count(name, params, 1);
        require(params[0] > 0, name, "alpha must be > 0");
        return make_log_logistic(params[0]);
    }
    if (name == "cauchy") {
        require_count(name, params, 0);
        return make_cauchy();
    }
    if (name == "weibull") {
        require_count(name, params, 1);
        require(params[0] < 0, name, "alpha must be < 0");
        return make_weibull(params[0]);
    }
    if (name == "endpoint_power") {
        require_count(name, params, 3);
        require(params[0] > 0, name, "K must be > 0");
        require(params[1] < -1, name, "alpha must be < -1");
        return make_endpoint_power(params[0], params[1], params[2]);
    }
    if (name == "uniform01") {
        require_count(name, params, 0);
        return make_uniform01();
    }
    if (name == "gumbel") {
        require_count(name, params, 0);
        return make_gumbel();
    }
    if (name == "stretched_gumbel") {
        require_count(name, params, 1);
        require(params[0] > 0 && params[0] != 1, name, "alpha must be > 0 and != 1");
        return make_stretched_gumbel(params[0]);
    }
    if (name == "std_normal") {
        require_count(name, params, 0);
        return make_std_normal();
    }
    throw InvalidArgument("unknown distribution: " + std::string(name));
}

CatalogEntry builtin_default(std::string_view name)
{
    return builtin(name, catalog_default_params(name));
}

namespace {

double interior_seed(const DistributionSpec& s)
{
    const bool left = s.support_left.is_finite();
    const bool right = s.omega.is_finite();
    if (left && right)
        return 0.5 * (s.support_left.value() + s.omega.value());
    if (right)
        return s.omega.value() - 1;
    if (left)
        return s.support_left.value() + 1;
    return 0.0;
}

// Smallest x with !below(x), for a predicate that is true on the left of the
// support and false on the right.
template <class Below>
double solve_monotone(const DistributionSpec& s, Below below)
{
    const double seed = interior_seed(s);
    double lo = seed;
    double hi = seed;
    if (below(seed)) {
        if (s.omega.is_finite()) {
            const double w = s.omega.value();
            double gap = w - seed;
            int k = 0;
            for (;; ++k) {
                gap *= 0.5;
                hi = w - gap;
                if (gap == 0 || hi >= w) {
                    hi = w;
                    break;
                }
                if (!below(hi))
                    break;
                lo = hi;
                if (k > kMaxBracketExpansions)
                    throw SolverError("quantile bracket failed toward omega in " + s.name);
            }
        } else {
            double step = std::max(1.0, std::abs(seed));
            for (int k = 0;; ++k) {
                hi = seed + step;
                if (!below(hi))
                    break;
                lo = hi;
                step *= 2;
                if (k > kMaxBracketExpansions || !std::isfinite(hi))
                    throw SolverError("quantile bracket failed toward +inf in " + s.name);
            }
        }
    } else {
        if (s.support_left.is_finite()) {
            const double l = s.support_left.value();
            double gap = seed - l;
            for (int k = 0;; ++k) {
                gap *= 0.5;
                lo = l + gap;
                if (gap == 0 || lo <= l) {
                    // Target is at or below the left edge.
                    return l;
                }
                if (below(lo))
                    break;
                hi = lo;
                if (k > kMaxBracketExpansions)
                    throw SolverError("quantile bracket failed toward the left edge in " +
                                      s.name);
            }
        } else {
            double step = std::max(1.0, std::abs(seed));
            for (int k = 0;; ++k) {
                lo = seed - step;
                if (below(lo))
                    break;
                hi = lo;
                step *= 2;
                if (k > kMaxBracketExpansions || !std::isfinite(lo))
                    throw SolverError("quantile bracket failed toward -inf in " + s.name);
            }
        }
    }
    return numeric::bisect_boundary(below, lo, hi, kMaxBisection).second;
}

void require_probability(double p)
{
    if (!(p > 0 && p < 1))
        throw InvalidArgument("probability must lie in (0, 1)");
}

} // namespace

double solve_upper_quantile(const DistributionSpec& spec, double tail)
{
    require_probability(tail);
    const double x = solve_monotone(spec, [&](double v) { return spec.survival(v) > tail; });
    if (std::abs(spec.survival(x) - tail) > kQuantileTol)
        throw SolverError("quantile residual above tolerance in " + spec.name);
    return x;
}

double solve_quantile(const DistributionSpec& spec, double p)
{
    require_probability(p);
    if (p > 0.5)
        return solve_upper_quantile(spec, 1 - p);
    const double x = solve_monotone(spec, [&](double v) { return spec.cdf(v) < p; });
    if (std::abs(spec.cdf(x) - p) > kQuantileTol)
        throw SolverError("quantile residual above tolerance in " + spec.name);
    return x;
}

double quantile_of(const DistributionSpec& spec, double p)
{
    require_probability(p);
    if (spec.quantile)
        return spec.quantile(p);
    return solve_quantile(spec, p);
}

double solve_distance_below_omega(const DistributionSpec& spec, double tail)
{
    require_probability(tail);
    if (!spec.omega.is_finite())
        throw InvalidArgument(spec.name + ": distance below omega needs a finite endpoint");
    const double w = spec.omega.value();
    if (!spec.tail_below_omega)
        return w - solve_upper_quantile(spec, tail);

    const auto& t = spec.tail_below_omega;
    const double d_max = w - spec.support_left.as_double();
    // below(d): tail(d) <= target, true near the endpoint.
    auto ok = [&](double d) { return t(d) <= tail; };
    double d = std::isfinite(d_max) ? 0.5 * d_max : 1.0;
    double lo, hi;
    if (ok(d)) {
        lo = d;
        for (int k = 0;; ++k) {
            const double next = std::isfinite(d_max) ? 0.5 * (lo + d_max) : 2 * lo;
            if (!ok(next)) {
                hi = next;
                break;
            }
            if (next == lo || k > kMaxBracketExpansions)
                return lo;
            lo = next;
        }
    } else {
        hi = d;
        for (int k = 0;; ++k) {
            const double next = 0.5 * hi;
            if (next == 0 || k > kMaxBracketExpansions)
                throw SolverError(spec.name + ": bracket failed approaching omega");
            if (ok(next)) {
                lo = next;
                break;
            }
            hi = next;
        }
    }
    const double root = numeric::bisect_boundary(ok, lo, hi, kMaxBisection).first;
    if (std::abs(t(root) - tail) > kQuantileTol)
        throw SolverError("distance residual above tolerance in " + spec.name);
    return root;
}

double pdf_of(const DistributionSpec& spec, double x)
{
    if (!spec.is_interior(x))
        throw DomainError(spec.name + ": pdf requested at or beyond the support edge");
    if (spec.pdf)
        return spec.pdf(x);
    double h = numeric::difference_step(x);
    const double room = std::min(x - spec.support_left.as_double(), spec.omega.as_double() - x);
    h = std::min(h, 0.5 * room);
    return (spec.cdf(x + h) - spec.cdf(x - h)) / (2 * h);
}

double pdf2_of(const DistributionSpec& spec, double x)
{
    if (!spec.is_interior(x))
        throw DomainError(spec.name + ": second derivative requested at or beyond the support edge");
    if (spec.pdf2)
        return spec.pdf2(x);
    double h = numeric::difference_step(x);
    const double room = std::min(x - spec.support_left.as_double(), spec.omega.as_double() - x);
    h = std::min(h, 0.25 * room);
    return numeric::five_point_derivative([&](double v) { return pdf_of(spec, v); }, x, h);
}

} // namespace freemax
