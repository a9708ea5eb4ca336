#include <doctest.h>

#include <cmath>
#include <numbers>

#include "freemax/errors.hpp"
#include "freemax/norming.hpp"
#include "freemax/von_mises.hpp"

using namespace freemax;

namespace {

const std::vector<std::int64_t> kNs = {2, 10, 100, 10000, 1000000, 1000000000};

} // namespace

TEST_CASE("Frechet-regime closed forms")
{
    for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
        const auto fr = builtin("frechet", {alpha});
        const auto ll = builtin("log_logistic", {alpha});
        for (std::int64_t n : kNs) {
            const double nn = static_cast<double>(n);
            const auto a = norming_for(fr, n);
            CHECK(a.a == doctest::Approx(std::pow(nn, 1 / alpha)).epsilon(1e-12));
            CHECK(a.b == 0.0);
            const auto b = norming_for(ll, n);
            CHECK(b.a == doctest::Approx(std::pow(std::expm1(1 / nn), -1 / alpha)).epsilon(1e-12));
        }
    }
    const auto ca = builtin_default("cauchy");
    for (std::int64_t n : kNs) {
        const double nn = static_cast<double>(n);
        // tan(pi e^{-1/n} - pi/2) = cot(pi (1 - e^{-1/n}))
        const double oracle = 1 / std::tan(std::numbers::pi * -std::expm1(-1 / nn));
        CHECK(norming_for(ca, n).a == doctest::Approx(oracle).epsilon(1e-11));
    }
}

TEST_CASE("Weibull-regime closed forms")
{
    for (double alpha : {-0.25, -1.0, -2.0, -5.0}) {
        const auto e = builtin("weibull", {alpha});
        for (std::int64_t n : kNs) {
            const auto np = norming_for(e, n);
            CHECK(np.a == doctest::Approx(std::pow(static_cast<double>(n), 1 / alpha)).epsilon(1e-12));
            CHECK(np.b == 0.0);
        }
    }
    const auto u = builtin_default("uniform01");
    for (std::int64_t n : kNs) {
        const auto np = norming_for(u, n);
        CHECK(np.a == doctest::Approx(-std::expm1(-1 / static_cast<double>(n))).epsilon(1e-14));
        CHECK(np.b == 1.0);
    }
    for (double k : {0.5, 1.0, 3.0}) {
        const double alpha = -2.5, omega = 2.0;
        const auto e = builtin("endpoint_power", {k, alpha, omega});
        for (std::int64_t n : kNs) {
            const double q = -std::expm1(-1 / static_cast<double>(n));
            const auto np = norming_for(e, n);
            CHECK(np.a == doctest::Approx(std::pow(k, 1 / alpha) * std::pow(q, -1 / alpha)).epsilon(1e-12));
            CHECK(np.b == omega);
        }
    }
}

TEST_CASE("Gumbel-regime closed forms")
{
    const auto g = builtin_default("gumbel");
    for (std::int64_t n : kNs) {
        const double nn = static_cast<double>(n);
        const auto np = norming_for(g, n);
        // Exactly b = -log(-log e^{-1/n}) = log n and a = 1.
        CHECK(np.b == doctest::Approx(std::log(nn)).epsilon(1e-12));
        CHECK(np.a == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (double alpha : {0.5, 2.0, 3.0}) {
        const auto e = builtin("stretched_gumbel", {alpha});
        for (std::int64_t n : {100, 10000, 1000000}) {
            const double ln = std::log(static_cast<double>(n));
            const auto np = norming_for(e, n);
            CHECK(np.b == doctest::Approx(std::pow(ln, 1 / alpha)).epsilon(1e-12));
            CHECK(np.a == doctest::Approx(std::pow(ln, -1 + 1 / alpha) / alpha).epsilon(1e-9));
        }
    }
}

TEST_CASE("std_normal b_n against bisection and the asymptotic form")
{
    const auto e = builtin_default("std_normal");
    const std::int64_t n = 10000;
    const double q = -std::expm1(-1e-4);
    double lo = 0, hi = 10;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (0.5 * std::erfc(mid / std::numbers::sqrt2) > q ? lo : hi) = mid;
    }
    const auto np = norming_for(e, n);
    CHECK(np.b == doctest::Approx(hi).epsilon(1e-13));
    const double ln = std::log(static_cast<double>(n));
    const double asym =
        std::sqrt(2 * ln) - (std::log(ln) + std::log(4 * std::numbers::pi)) / (2 * std::sqrt(2 * ln));
    CHECK(std::abs(np.b - asym) <= 0.05 * asym);
}

TEST_CASE("norming points satisfy F = e^{-1/n} and phi = log n")
{
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        const auto e = builtin_default(name);
        for (std::int64_t n : {2, 100, 10000, 1000000}) {
            const auto np = norming_for(e, n);
            CHECK(np.a > 0);
            CHECK(np.residual <= kQuantileTol);
            CHECK_FALSE(np.non_unique);
            const double t = norming_target(e.regime, np);
            const double q = tail_mass(n);
            if (e.regime.kind == RegimeKind::Weibull && e.spec.tail_below_omega)
                CHECK(std::abs(e.spec.tail_below_omega(np.a) - q) <= kQuantileTol);
            else
                CHECK(std::abs(e.spec.survival(t) - q) <= kQuantileTol);
            const double phi = -std::log(e.spec.neg_log_cdf(t));
            CHECK(std::abs(phi - std::log(static_cast<double>(n))) <= 1e-8);
        }
    }
}

TEST_CASE("Gumbel a_n is the auxiliary function at b_n")
{
    for (const char* name : {"gumbel", "stretched_gumbel", "std_normal"}) {
        const auto e = builtin_default(name);
        for (std::int64_t n : {100, 10000, 1000000}) {
            const auto np = norming_for(e, n);
            CHECK(np.a == doctest::Approx(auxiliary_f(e.spec, np.b)).epsilon(1e-8));
        }
    }
}

TEST_CASE("flat CDF returns the infimum and flags it")
{
    // Plateau at e^{-1/2} on [1, 2], linear pieces on [0, 1] and [2, 3].
    const double p0 = std::exp(-0.5);
    DistributionSpec s;
    s.name = "plateau";
    s.cdf = [p0](double x) {
        if (x <= 0)
            return 0.0;
        if (x < 1)
            return p0 * x;
        if (x <= 2)
            return p0;
        if (x < 3)
            return p0 + (1 - p0) * (x - 2);
        return 1.0;
    };
    s.sf = [p0](double x) {
        if (x <= 1)
            return 1 - p0 * std::max(x, 0.0);
        if (x <= 2)
            return 1 - p0;
        return (1 - p0) * std::max(3 - x, 0.0);
    };
    s.omega = ExtendedReal::finite(3.0);
    s.support_left = ExtendedReal::finite(0.0);
    const auto np = norming_gumbel(s, 2);
    CHECK(np.b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(np.non_unique);
    const auto w = norming_weibull(s, 2);
    CHECK(w.a == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w.non_unique);
}

TEST_CASE("norming errors")
{
    const auto fr = builtin("frechet", {2.0});
    CHECK_THROWS_AS(norming_for(fr, 0), InvalidArgument);
    CHECK_THROWS_AS(norming_for(fr, kMaxPower + 1), InvalidArgument);
    CHECK_THROWS_AS(norming_frechet(builtin_default("uniform01").spec, 10), InvalidArgument);
    CHECK_THROWS_AS(norming_weibull(fr.spec, 10), InvalidArgument);
    CHECK(tail_mass(1000000000) == doctest::Approx(1e-9).epsilon(1e-9));
}
