#pragma once

#include <string>

namespace freemax {

enum class RegimeKind { Frechet, Weibull, Gumbel };

/// Domain of attraction: free Frechet (alpha > 0), free Weibull (alpha < 0)
/// or free Gumbel (alpha == 0).
struct Regime {
    RegimeKind kind = RegimeKind::Gumbel;
    double alpha = 0.0;

    static Regime frechet(double alpha);
    static Regime weibull(double alpha);
    static Regime gumbel();

    friend bool operator==(const Regime&, const Regime&) = default;
};

std::string to_string(RegimeKind kind);

} // namespace freemax
