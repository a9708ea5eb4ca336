#pragma once

#include <cstdint>
#include <vector>

#include "freemax/dist_catalog.hpp"
#include "freemax/norming.hpp"

namespace freemax {

/// Free extreme value law Phi_alpha^free: Frechet for alpha > 0, Weibull for
/// alpha < 0, Gumbel for alpha == 0.
class FreeEvd {
public:
    explicit FreeEvd(double alpha) : alpha_(alpha) {}

    double alpha() const { return alpha_; }
    double cdf(double x) const;
    /// Density; zero outside the open domain.
    double density(double x) const;
    /// Open interval where the density is positive: (1,inf), (-1,0) or (0,inf).
    double domain_lower() const;
    double domain_upper() const;

private:
    double alpha_;
};

inline FreeEvd free_evd(double alpha) { return FreeEvd(alpha); }

/// Classical Frechet / Weibull / Gumbel CDFs.
class ClassicalEvd {
public:
    explicit ClassicalEvd(double alpha) : alpha_(alpha) {}
    double alpha() const { return alpha_; }
    double cdf(double x) const;

private:
    double alpha_;
};

/// Measured supremum of a gap next to the claimed bound.
struct GapBound {
    double sup_gap = 0.0;  ///< from the stationary point of the gap
    double grid_sup = 0.0; ///< independent grid + golden-section maximum
    double argmax = 0.0;
    double bound = 0.0;
    bool violated = false; ///< sup_gap > bound + 1e-12
};

/// sup_{x>1} |Phi_{a1}^free - Phi_{a2}^free| against e^{-1}|a2-a1|/(a1 v a2).
GapBound frechet_gap_bound(double alpha1, double alpha2);

/// sup_{x>1} |x Phi_{b1}^free - x Phi_{b2}^free| against
/// e^{-1}|b2-b1|/((b1-1) v (b2-1)). Requires b1, b2 > 1.
GapBound xphi_gap_bound(double beta1, double beta2);

/// U_+(a,x) = {1 - (1 + a x)^{-1/a}} 1_{(-1/a, inf)}(x), clamped below at 0.
double u_plus(double a, double x);
/// U_-(a,x) = {1 - (1 - a x)^{1/a}} 1_{(-inf, 1/a)}(x) + 1_{[1/a, inf)}(x),
/// clamped below at 0.
double u_minus(double a, double x);
/// The displayed expressions without clamping; negative for x < 0.
double u_plus_raw(double a, double x);
double u_minus_raw(double a, double x);

struct UGapBound {
    double sup_gap_plus = 0.0;
    double sup_gap_minus = 0.0;
    double bound = 0.0;
    bool outside_hypothesis = false; ///< a >= 1
    bool violated = false;
};

/// sup over the real line of |U_+- (a,.) - Phi_0^free|, split at -1/a, 0, 1/a.
UGapBound u_gap_bound(double a);

struct SandwichReport {
    bool holds = true;
    double g_at_norm = 0.0;
    double lower_violation = 0.0; ///< max of (lower side - middle), <= 0 when it holds
    double upper_violation = 0.0; ///< max of (middle - upper side)
    std::size_t points = 0;
};

/// Two-sided bound on n(-log F) at the normalised points, tolerance 1e-10.
/// Frechet: Phi_a - Phi_{a+g} <= n(-log F(a_n x)) - x^{-a} <= Phi_a - Phi_{a-g}, x >= 1.
/// Weibull: the same on the reflected distribution with beta = -alpha.
/// Gumbel: U_+(g, x) <= 1 + n log F(a_n x + b_n) <= U_-(g, x), x > 0.
/// Throws InvalidArgument when the entry has no closed-form envelope.
SandwichReport sandwich_check(const CatalogEntry& entry, std::int64_t n,
                              const std::vector<double>& x_grid);

/// F(a_n x + b_n)^n.
double classical_power_cdf(const CatalogEntry& entry, std::int64_t n, double x);
double classical_power_cdf(const CatalogEntry& entry, const NormingPair& norming, double x);

} // namespace freemax
