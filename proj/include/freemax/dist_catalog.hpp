#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "freemax/extended_real.hpp"
#include "freemax/regime.hpp"

namespace freemax {

using RealFn = std::function<double(double)>;

/// A distribution function F together with whatever analytic pieces are
/// known about it. Only `cdf` is mandatory; the optional members let
/// callers avoid cancellation in the right tail.
struct DistributionSpec {
    std::string name;
    RealFn cdf;
    RealFn sf;       ///< 1 - F, accurate where F is close to 1.
    RealFn pdf;      ///< F'
    RealFn pdf2;     ///< F''
    RealFn quantile; ///< F^{<-} on (0,1)
    /// For finite omega: d -> 1 - F(omega - d) and d -> F'(omega - d), d > 0.
    RealFn tail_below_omega;
    RealFn pdf_below_omega;
    ExtendedReal omega = ExtendedReal::pos_infinity();
    ExtendedReal support_left = ExtendedReal::neg_infinity();

    /// 1 - F(x), from `sf` when present.
    double survival(double x) const;
    /// -log F(x), computed as -log1p(-S) in the upper half.
    double neg_log_cdf(double x) const;
    /// True when x lies strictly between support_left and omega.
    bool is_interior(double x) const;
};

/// One of the sample distributions from the worked examples, with its
/// regime, tail index and (when known in closed form) the envelope g of
/// the von Mises functional.
struct CatalogEntry {
    DistributionSpec spec;
    Regime regime;
    double alpha = 0.0;
    RealFn envelope;
    std::vector<double> params;
};

inline constexpr double kQuantileTol = 1e-12;
inline constexpr int kMaxBisection = 200;
inline constexpr int kMaxBracketExpansions = 1100;

/// Names accepted by builtin(), in catalog order.
const std::vector<std::string>& catalog_names();

/// Parameter names for a catalog family, e.g. {"alpha"} or {"K","alpha","omega"}.
std::vector<std::string> catalog_param_names(std::string_view name);

/// Default parameters used by tests and the CLI when none are given.
std::vector<double> catalog_default_params(std::string_view name);

/// Builds a catalog entry. Throws InvalidArgument for an unknown name, a
/// wrong parameter count or a parameter outside the family's range.
CatalogEntry builtin(std::string_view name, const std::vector<double>& params);

/// builtin(name, catalog_default_params(name)).
CatalogEntry builtin_default(std::string_view name);

/// F^{<-}(p). Uses the analytic quantile when present, otherwise
/// solve_quantile.
double quantile_of(const DistributionSpec& spec, double p);

/// Generic F^{<-}(p) by bisection from a bracket grown geometrically around
/// an interior seed. Works on the survival function when p > 1/2.
double solve_quantile(const DistributionSpec& spec, double p);

/// F^{<-}(1 - tail) for tail in (0,1), without forming 1 - tail.
double solve_upper_quantile(const DistributionSpec& spec, double tail);

/// d > 0 with 1 - F(omega - d) = tail (finite omega only), solved in the
/// distance variable so d keeps full relative precision.
double solve_distance_below_omega(const DistributionSpec& spec, double tail);

/// F'(x): analytic when present, else a central difference with step
/// cbrt(eps) * max(1, |x|). Throws DomainError at or beyond the support edges.
double pdf_of(const DistributionSpec& spec, double x);

/// F''(x): analytic when present, else a five-point derivative of pdf_of.
double pdf2_of(const DistributionSpec& spec, double x);

} // namespace freemax
