#pragma once

#include <cstdint>

#include "freemax/dist_catalog.hpp"
#include "freemax/regime.hpp"

namespace freemax {

inline constexpr std::int64_t kMaxPower = 1'000'000'000;

/// Scale a and shift b such that F^{free n}(a x + b) converges. `residual` is
/// |F(target) - e^{-1/n}| at the defining point, evaluated on the tail side.
struct NormingPair {
    double a = 1.0;
    double b = 0.0;
    std::int64_t n = 1;
    double residual = 0.0;
    /// F is flat at the target, so F(target) = e^{-1/n} has more than one root
    /// and the infimum was returned.
    bool non_unique = false;
};

/// a = F^{<-}(e^{-1/n}), b = 0. Requires omega = +inf.
NormingPair norming_frechet(const DistributionSpec& spec, std::int64_t n);

/// a = omega - F^{<-}(e^{-1/n}), b = omega. Requires finite omega.
NormingPair norming_weibull(const DistributionSpec& spec, std::int64_t n);

/// b = F^{<-}(e^{-1/n}), a = F(b) / (n F'(b)).
NormingPair norming_gumbel(const DistributionSpec& spec, std::int64_t n);

/// Dispatches on the regime.
NormingPair norming_for(const DistributionSpec& spec, const Regime& regime, std::int64_t n);
NormingPair norming_for(const CatalogEntry& entry, std::int64_t n);

/// The point where F equals e^{-1/n}: a, b - a or b depending on the regime.
double norming_target(const Regime& regime, const NormingPair& norming);

/// -expm1(-1/n), i.e. 1 - e^{-1/n} without cancellation.
double tail_mass(std::int64_t n);

} // namespace freemax
