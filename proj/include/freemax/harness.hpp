#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "freemax/dist_catalog.hpp"

namespace freemax {

enum class RateReference { NInv, GAtNorm, MaxOfBoth };

struct Interval {
    double lo;
    double hi;
};

struct ExperimentConfig {
    CatalogEntry entry;
    std::vector<std::int64_t> n_list;
    std::size_t grid_points = 100'000;
    std::optional<Interval> domain_override;
    RateReference rate_reference = RateReference::MaxOfBoth;
};

struct ConvergenceRow {
    std::int64_t n = 0;
    double sup_error = 0.0;
    double argmax_x = 0.0;
    double a_lower = 0.0;
    double b_upper = 0.0; ///< +inf when omega is infinite
    double g_at_norm = 0.0;
    double n_inv = 0.0;

    friend bool operator==(const ConvergenceRow&, const ConvergenceRow&) = default;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> per_n;
    double fitted_slope = 0.0;
    bool bound_satisfied = false;
    double constant = 0.0; ///< C in sup_error <= C (n^-1 v g)
    /// Smallest tested n from which every later row satisfies the bound.
    std::int64_t n_threshold = 0;
};

struct SupResult {
    double sup = 0.0;
    double argmax = 0.0;
};

/// Open domain on which the regime's limit density is positive.
Interval theorem_domain(const Regime& regime);

/// Evaluation grid used by sup_error before intersecting with (A_n, B_n).
std::vector<double> sup_grid(const Regime& regime, std::size_t grid_points,
                             const std::optional<Interval>& domain_override = std::nullopt);

/// sup |w_n - phi^free| over the theorem domain (or the override) intersected
/// with the support window. Throws InvalidArgument when that set is empty.
SupResult sup_error(const CatalogEntry& entry, std::int64_t n, std::size_t grid_points,
                    const std::optional<Interval>& domain_override = std::nullopt);

/// Envelope g at the regime's norming point; NaN when the entry has none.
double envelope_at_norm(const CatalogEntry& entry, std::int64_t n);

/// Least-squares slope of log sup_error against log n over the last half of the rows.
double fit_rate(const std::vector<ConvergenceRow>& rows);

ConvergenceReport run_experiment(const ExperimentConfig& cfg);

/// sup over (A_n, 1] of |w_n - phi^free| for a Frechet-regime entry.
double boundary_gap(const CatalogEntry& entry, std::int64_t n);

/// w_n(A_n+) for frechet(alpha): alpha {-n log(1 - 1/n)}^{1+1/alpha} (1 - 1/n).
double frechet_boundary_limit(double alpha, std::int64_t n);

struct Witness {
    double x = 0.0;
    /// |w_n - phi^free| from w_n = phi^free exp(-(-x)^{-alpha}/n), free of cancellation.
    double error = 0.0;
    /// The same difference taken between density_wn and phi^free; both are
    /// huge at the witness, so this keeps only a few digits.
    double direct_error = 0.0;
    double window_lower = 0.0; ///< the window is (window_lower, 0)
};

/// Point inside the window where |w_n - phi^free| >= 1 for weibull(alpha),
/// -1/2 < alpha < 0, showing uniform convergence fails on (-1, 0). The
/// witness is the window midpoint.
Witness nonconvergence_witness(double alpha, std::int64_t n);

/// max over x_grid of |F^{free n}(a_n x + b_n) - Phi^free(x)|.
double weak_convergence_check(const CatalogEntry& entry, std::int64_t n,
                              const std::vector<double>& x_grid);

/// x grid covering the bulk of the limit law for the regime.
std::vector<double> weak_grid(const Regime& regime, std::size_t points);

/// n values 10^k with `per_decade` log-spaced points per decade, inclusive.
std::vector<std::int64_t> log_spaced_n(std::int64_t n_min, std::int64_t n_max, int per_decade);

/// Worker count: hardware concurrency capped by FREEMAX_THREADS.
unsigned worker_count();

} // namespace freemax
