#include "freemax/regime.hpp"

#include "freemax/errors.hpp"

namespace freemax {

Regime Regime::frechet(double alpha)
{
    if (!(alpha > 0))
        throw InvalidArgument("Frechet regime needs alpha > 0");
    return {RegimeKind::Frechet, alpha};
}

Regime Regime::weibull(double alpha)
{
    if (!(alpha < 0))
        throw InvalidArgument("Weibull regime needs alpha < 0");
    return {RegimeKind::Weibull, alpha};
}

Regime Regime::gumbel() { return {RegimeKind::Gumbel, 0.0}; }

std::string to_string(RegimeKind kind)
{
    switch (kind) {
    case RegimeKind::Frechet:
        return "frechet";
    case RegimeKind::Weibull:
        return "weibull";
    case RegimeKind::Gumbel:
        return "gumbel";
    }
    return "?";
}

} // namespace freemax
