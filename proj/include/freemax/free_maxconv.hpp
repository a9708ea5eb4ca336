#pragma once

#include <cstdint>

#include "freemax/dist_catalog.hpp"
#include "freemax/extended_real.hpp"
#include "freemax/norming.hpp"

namespace freemax {

/// Open interval (A_n, B_n) where the normalised free power CDF lies
/// strictly between 0 and 1.
struct SupportWindow {
    double a_lower;
    ExtendedReal b_upper;

    bool contains(double x) const { return x > a_lower && x < b_upper.as_double(); }
};

/// x -> F^{free n}(a x + b) for a base distribution F and norming (a, b).
struct FreePower {
    DistributionSpec base;
    std::int64_t n = 1;
    NormingPair norming;

    /// Computes the support window; throws if the norming is invalid.
    FreePower(DistributionSpec base, std::int64_t n, NormingPair norming);

    /// a x + b.
    double affine(double x) const { return norming.a * x + norming.b; }
    const SupportWindow& window() const { return window_; }

    /// 1 - F(a x + b), evaluated in the distance variable when b = omega.
    double tail_at(double x) const;
    /// F'(a x + b), same convention.
    double pdf_at(double x) const;

private:
    bool below_omega_form() const;

    SupportWindow window_;
};

/// Builds the free power of a catalog entry with its regime's norming.
FreePower make_free_power(const CatalogEntry& entry, std::int64_t n);

/// (F box-max G)(x) = max{F(x) + G(x) - 1, 0}.
double free_max_cdf(const DistributionSpec& f, const DistributionSpec& g, double x);

/// max{n F(a x + b) - (n - 1), 0}.
double free_power_cdf(const FreePower& fp, double x);

/// Density n a F'(a x + b) of the normalised free power. Throws DomainError
/// outside the support window.
double density_wn(const FreePower& fp, double x);

/// A_n = (F^{<-}(1 - 1/n) - b) / a and B_n = (omega - b) / a.
SupportWindow support_window(const FreePower& fp);

} // namespace freemax
