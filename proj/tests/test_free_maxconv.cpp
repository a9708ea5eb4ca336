#include <doctest.h>

#include <cmath>

#include "freemax/errors.hpp"
#include "freemax/free_maxconv.hpp"
#include "freemax/numeric.hpp"

using namespace freemax;

TEST_CASE("free max-convolution of two laws")
{
    const auto u = builtin_default("uniform01").spec;
    CHECK(free_max_cdf(u, u, 0.75) == doctest::Approx(0.5));
    CHECK(free_max_cdf(u, u, 0.25) == 0.0);
    const auto f = builtin("frechet", {1.0}).spec;
    CHECK(std::abs(free_max_cdf(f, f, 1 / std::log(2.0))) <= 1e-15);
}

TEST_CASE("free power of frechet against the closed form")
{
    const double alpha = 2.0;
    const auto e = builtin("frechet", {alpha});
    for (std::int64_t n : {10, 1000, 100000}) {
        const FreePower fp = make_free_power(e, n);
        const double nn = static_cast<double>(n);
        CHECK(fp.norming.a == doctest::Approx(std::pow(nn, 1 / alpha)).epsilon(1e-13));
        for (double x : {0.99999, 1.0, 1.5, 10.0, 1e6}) {
            // 1 - n(1 - exp(-x^{-alpha}/n)) in expm1 form.
            const double oracle = std::max(1 + nn * std::expm1(-std::pow(x, -alpha) / nn), 0.0);
            CHECK(free_power_cdf(fp, x) == doctest::Approx(oracle).epsilon(1e-13));
        }
        CHECK(free_power_cdf(fp, 1e6) >= 1 - 1e-12 * 1.000001);
    }
}

TEST_CASE("n = 1 is the base law")
{
    const auto e = builtin("frechet", {3.0});
    NormingPair np;
    np.a = 1.0;
    np.b = 0.0;
    np.n = 1;
    const FreePower fp(e.spec, 1, np);
    CHECK(free_power_cdf(fp, 2.0) == e.spec.cdf(2.0));
    CHECK(density_wn(fp, 2.0) == doctest::Approx(3 * std::pow(2.0, -4) * std::exp(-std::pow(2.0, -3))));
}

TEST_CASE("uniform free power and its flat density")
{
    const auto e = builtin_default("uniform01");
    for (std::int64_t n : {10, 1000, 1000000}) {
        const FreePower fp = make_free_power(e, n);
        const double nn = static_cast<double>(n);
        const double a = -std::expm1(-1 / nn);
        CHECK(fp.norming.a == doctest::Approx(a).epsilon(1e-14));
        CHECK(fp.norming.b == 1.0);
        // n (1 - a/2) - (n - 1), rearranged to avoid cancellation.
        CHECK(free_power_cdf(fp, -0.5) == doctest::Approx(1 - 0.5 * nn * a).epsilon(1e-12));
        for (double x : {-0.999, -0.5, -1e-9})
            CHECK(density_wn(fp, x) == doctest::Approx(nn * a).epsilon(1e-14));
        CHECK(fp.window().b_upper.value() == 0.0);
        CHECK(fp.window().a_lower == doctest::Approx(-1 / (nn * a)).epsilon(1e-12));
    }
}

TEST_CASE("weibull free power density")
{
    for (double alpha : {-2.0, -1.0, -0.5}) {
        const auto e = builtin("weibull", {alpha});
        const std::int64_t n = 1000;
        const FreePower fp = make_free_power(e, n);
        for (double x : {-0.9, -0.5, -0.1, -1e-4}) {
            const double oracle = -alpha * std::pow(-x, -alpha - 1) *
                                  std::exp(-std::pow(-x, -alpha) / static_cast<double>(n));
            CHECK(density_wn(fp, x) == doctest::Approx(oracle).epsilon(1e-11));
        }
    }
}

TEST_CASE("frechet window edge")
{
    const double alpha = 2.0;
    const auto e = builtin("frechet", {alpha});
    for (std::int64_t n : {100, 10000}) {
        const FreePower fp = make_free_power(e, n);
        const double nn = static_cast<double>(n);
        const double oracle = std::pow(-nn * std::log1p(-1 / nn), -1 / alpha);
        CHECK(fp.window().a_lower == doctest::Approx(oracle).epsilon(1e-12));
        CHECK_FALSE(fp.window().b_upper.is_finite());
        CHECK_THROWS_AS(density_wn(fp, fp.window().a_lower), DomainError);
        CHECK_THROWS_AS(density_wn(fp, 0.5), DomainError);
    }
}

TEST_CASE("std_normal window against a bisection oracle")
{
    const auto e = builtin_default("std_normal");
    const std::int64_t n = 1000;
    const FreePower fp = make_free_power(e, n);
    double lo = 0, hi = 10;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (e.spec.survival(mid) > 1e-3 ? lo : hi) = mid;
    }
    const double oracle = (hi - fp.norming.b) / fp.norming.a;
    CHECK(fp.window().a_lower == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(fp.window().a_lower < 0);
    CHECK(fp.window().a_lower > -1e-2);
}

TEST_CASE("window edges approach the regime limits")
{
    struct Case {
        const char* name;
        double target;
    };
    for (const auto& c : {Case{"frechet", 1.0}, Case{"log_logistic", 1.0}, Case{"cauchy", 1.0},
                          Case{"weibull", -1.0}, Case{"uniform01", -1.0},
                          Case{"endpoint_power", -1.0}, Case{"gumbel", 0.0},
                          Case{"stretched_gumbel", 0.0}, Case{"std_normal", 0.0}}) {
        CAPTURE(c.name);
        const auto e = builtin_default(c.name);
        double prev = std::numeric_limits<double>::infinity();
        for (std::int64_t n : {100, 1000, 10000, 100000}) {
            const FreePower fp = make_free_power(e, n);
            const double dist = std::abs(fp.window().a_lower - c.target);
            CHECK(dist < prev);
            prev = dist;
            if (e.regime.kind == RegimeKind::Gumbel)
                CHECK_FALSE(fp.window().b_upper.is_finite());
        }
        CHECK(prev < 1e-3);
    }
}

TEST_CASE("free power CDF is a CDF and its derivative is w_n")
{
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        const auto e = builtin_default(name);
        for (std::int64_t n : {10, 1000}) {
            const FreePower fp = make_free_power(e, n);
            const double lo = fp.window().a_lower;
            const double hi = fp.window().b_upper.is_finite() ? fp.window().b_upper.value() : lo + 30;
            CHECK(free_power_cdf(fp, lo) <= 1e-7);
            if (fp.window().b_upper.is_finite())
                CHECK(free_power_cdf(fp, hi) == doctest::Approx(1.0).epsilon(1e-7));
            const auto grid = numeric::linspace(lo, hi, 1002);
            double prev = 0.0;
            for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
                const double x = grid[i];
                const double c = free_power_cdf(fp, x);
                CHECK(c >= prev);
                prev = c;
                const double h = 1e-6 * std::max(1.0, std::abs(x)) * std::min(1.0, hi - lo);
                if (!fp.window().contains(x - h) || !fp.window().contains(x + h))
                    continue;
                const double fd = (free_power_cdf(fp, x + h) - free_power_cdf(fp, x - h)) / (2 * h);
                const double w = density_wn(fp, x);
                if (w < 1e-6)
                    continue;
                CAPTURE(x);
                CHECK(std::abs(fd - w) <= 1e-5 * w);
            }
        }
    }
}

TEST_CASE("n = 2 equals the binary operation composed with the affine map")
{
    for (const auto& name : catalog_names()) {
        CAPTURE(name);
        const auto e = builtin_default(name);
        const FreePower fp = make_free_power(e, 2);
        if (fp.norming.b == e.spec.omega.as_double())
            continue; // distance form, not a plain composition
        for (double x : numeric::linspace(fp.window().a_lower, fp.window().a_lower + 3, 50))
            CHECK(free_power_cdf(fp, x) == free_max_cdf(e.spec, e.spec, fp.affine(x)));
    }
}

TEST_CASE("invalid free powers")
{
    const auto e = builtin("frechet", {2.0});
    NormingPair bad;
    bad.a = -1.0;
    CHECK_THROWS_AS(FreePower(e.spec, 10, bad), InvalidArgument);
    NormingPair ok;
    CHECK_THROWS_AS(FreePower(e.spec, 0, ok), InvalidArgument);
}
