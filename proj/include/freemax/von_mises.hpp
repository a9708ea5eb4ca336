#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "freemax/dist_catalog.hpp"
#include "freemax/regime.hpp"

namespace freemax {

/// h_alpha(x) = x phi'(x) - alpha with F = exp(-e^{-phi}).
double h_frechet(const DistributionSpec& spec, double alpha, double x);

/// h_alpha(x) = (omega - x) phi'(x) + alpha.
double h_weibull(const DistributionSpec& spec, double alpha, double x);

/// h_0(x) = f'(x) = -log F - (F F'' (-log F) / F'^2 + 1).
double h_gumbel(const DistributionSpec& spec, double x);

/// Regime-selected h.
double h_for(const DistributionSpec& spec, const Regime& regime, double x);

/// Auxiliary function f = 1/phi' = F (-log F) / F'.
double auxiliary_f(const DistributionSpec& spec, double x);

/// F_*(x) = F(omega - 1/x) for x > 0, 0 otherwise. Maps a finite-endpoint
/// distribution to one with omega = +inf.
DistributionSpec reflect_weibull(const DistributionSpec& spec);

enum class EnvelopeMode {
    Catalog, ///< use the entry's closed-form g
    Auto,    ///< right-to-left running maximum of |h| (not certified)
};

struct NormPointValue {
    std::int64_t n;
    double point; ///< a_n, omega - a_n or b_n
    double h;
    double g;
};

struct VonMisesReport {
    Regime regime;
    std::vector<std::pair<double, double>> h_values;
    std::vector<std::pair<double, double>> envelope_values;
    std::vector<NormPointValue> at_norm;
    bool monotone_ok = true;
    bool domination_ok = true;
    bool certified = true;
    std::size_t skipped = 0; ///< grid points where h is undefined
};

/// Samples h and g on x_grid and at the norming point of each n. Falls back
/// to Auto when the entry carries no envelope.
VonMisesReport check_membership(const CatalogEntry& entry, const std::vector<std::int64_t>& n_grid,
                                const std::vector<double>& x_grid,
                                EnvelopeMode mode = EnvelopeMode::Catalog);

} // namespace freemax
