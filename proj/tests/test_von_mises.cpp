#include <doctest.h>

#include <cmath>
#include <numbers>

#include "freemax/errors.hpp"
#include "freemax/norming.hpp"
#include "freemax/numeric.hpp"
#include "freemax/von_mises.hpp"

using namespace freemax;

TEST_CASE("h vanishes for the exact extreme value laws")
{
    for (double alpha : {0.5, 2.0, 5.0}) {
        const auto e = builtin("frechet", {alpha});
        for (double x : {0.3, 1.0, 7.0, 1e4})
            CHECK(std::abs(h_frechet(e.spec, alpha, x)) <= 1e-12 * std::max(1.0, alpha));
    }
    for (double alpha : {-0.5, -2.0}) {
        const auto e = builtin("weibull", {alpha});
        for (double x : {-3.0, -1.0, -0.2, -1e-3})
            CHECK(std::abs(h_weibull(e.spec, alpha, x)) <= 1e-12);
    }
    const auto g = builtin_default("gumbel");
    for (double x : {-1.0, 0.0, 3.0, 15.0}) {
        CHECK(std::abs(h_gumbel(g.spec, x)) <= 1e-10);
        CHECK(auxiliary_f(g.spec, x) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closed-form h values")
{
    const double alpha = 2.0;
    const auto ll = builtin("log_logistic", {alpha});
    for (double x : {0.5, 1.0, 4.0, 100.0})
        CHECK(std::abs(h_frechet(ll.spec, alpha, x)) <= alpha / (1 + std::pow(x, alpha)) + 1e-12);

    const auto ca = builtin_default("cauchy");
    const double oracle = 1 / (std::numbers::pi * 2 * 0.75 * -std::log(0.75)) - 1;
    CHECK(h_frechet(ca.spec, 1.0, 1.0) == doctest::Approx(oracle).epsilon(1e-13));

    const auto u = builtin_default("uniform01");
    for (double x : {0.1, 0.5, 0.9}) {
        const double v = (1 - x) / (x * -std::log(x)) - 1;
        CHECK(h_weibull(u.spec, -1.0, x) == doctest::Approx(v).epsilon(1e-13));
        CHECK(v > 0);
    }
    for (std::int64_t n : {10, 1000}) {
        const double nn = static_cast<double>(n);
        const double x = std::exp(-1 / nn);
        CHECK(u.envelope(x) == doctest::Approx(nn * std::exp(1 / nn) * -std::expm1(-1 / nn) - 1).epsilon(1e-8));
    }

    for (double a : {0.5, 2.0, 3.0}) {
        const auto sg = builtin("stretched_gumbel", {a});
        for (double x : {0.5, 1.0, 2.0, 3.0}) {
            CHECK(h_gumbel(sg.spec, x) == doctest::Approx((-1 + 1 / a) * std::pow(x, -a)).epsilon(1e-6));
            CHECK(auxiliary_f(sg.spec, x) == doctest::Approx(std::pow(x, 1 - a) / a).epsilon(1e-12));
        }
    }

    const auto nrm = builtin_default("std_normal");
    for (double x : {-1.0, 0.0, 1.0, 3.0, 6.0}) {
        const double s = 0.5 * std::erfc(x / std::numbers::sqrt2);
        const double f = 1 - s;
        const double p = std::exp(-x * x / 2) / std::sqrt(2 * std::numbers::pi);
        const double v = -std::log1p(-s) * (1 + x * f / p) - 1;
        CHECK(h_gumbel(nrm.spec, x) == doctest::Approx(v).epsilon(1e-9));
    }
}

TEST_CASE("h_gumbel is the derivative of the auxiliary function")
{
    for (const char* name : {"gumbel", "stretched_gumbel", "std_normal"}) {
        CAPTURE(name);
        const auto e = builtin_default(name);
        for (double x : numeric::linspace(0.5, 6.0, 40)) {
            const double h = 1e-4;
            const double fd = (auxiliary_f(e.spec, x + h) - auxiliary_f(e.spec, x - h)) / (2 * h);
            const double v = h_gumbel(e.spec, x);
            CHECK(std::abs(v - fd) <= 1e-5 * std::max(std::abs(v), 1e-3));
        }
    }
}

TEST_CASE("auxiliary function at b_n is a_n")
{
    const auto e = builtin_default("std_normal");
    const auto np = norming_for(e, 1000);
    CHECK(auxiliary_f(e.spec, np.b) == doctest::Approx(np.a).epsilon(1e-12));
}

TEST_CASE("Weibull-Frechet reflection identity")
{
    for (const char* name : {"weibull", "uniform01", "endpoint_power"}) {
        CAPTURE(name);
        const auto e = builtin_default(name);
        const auto r = reflect_weibull(e.spec);
        const double w = e.spec.omega.value();
        const double lo = std::max(1.0, r.support_left.value() * 1.01);
        for (double x : numeric::linspace(lo, 50.0, 200)) {
            const double left = h_weibull(e.spec, e.alpha, w - 1 / x);
            const double right = h_frechet(r, -e.alpha, x);
            CHECK(std::abs(left - right) <= 1e-10);
        }
    }
}

TEST_CASE("membership check with catalog envelopes")
{
    const std::vector<std::int64_t> ns = {100, 1000, 10000, 100000};
    for (const char* name : {"frechet", "log_logistic", "cauchy", "weibull", "uniform01",
                             "endpoint_power", "gumbel", "stretched_gumbel"}) {
        CAPTURE(name);
        const auto e = builtin_default(name);
        // From the first norming point toward the right endpoint.
        const double lo = norming_target(e.regime, norming_for(e, ns.front()));
        const double hi = e.spec.omega.is_finite()
                              ? e.spec.omega.value() - 1e-9
                              : 2 * norming_target(e.regime, norming_for(e, ns.back()));
        const auto grid = numeric::linspace(lo, hi, 500);
        const auto rep = check_membership(e, ns, grid);
        CHECK(rep.certified);
        CHECK(rep.domination_ok);
        CHECK(rep.monotone_ok);
        // h at the norming points shrinks to 0 along n.
        for (std::size_t i = 1; i < rep.at_norm.size(); ++i)
            CHECK(std::abs(rep.at_norm[i].h) <= std::abs(rep.at_norm[i - 1].h) + 1e-12);
        CHECK(std::abs(rep.at_norm.back().h) <= rep.at_norm.back().g + 1e-12);
    }
}

TEST_CASE("envelope values at the norming points")
{
    const double alpha = 2.0;
    const auto ll = builtin("log_logistic", {alpha});
    const auto ca = builtin_default("cauchy");
    for (std::int64_t n : {100, 10000}) {
        const double nn = static_cast<double>(n);
        const auto r = check_membership(ll, {n}, {});
        CHECK(r.at_norm[0].g == doctest::Approx(alpha * -std::expm1(-1 / nn)).epsilon(1e-10));
        const auto c = check_membership(ca, {n}, {});
        const double oracle = 1 + nn / (2 * std::numbers::pi) * std::sin(2 * std::numbers::pi * std::exp(-1 / nn));
        CHECK(c.at_norm[0].g == doctest::Approx(oracle).epsilon(1e-6));
        CHECK(c.at_norm[0].g == doctest::Approx(1 / (2 * nn)).epsilon(5.0 / nn));
    }
}

TEST_CASE("std_normal envelope fails domination below about 7")
{
    const auto e = builtin_default("std_normal");
    const auto low = check_membership(e, {}, numeric::linspace(0.2, 6.5, 300));
    CHECK_FALSE(low.domination_ok);
    CHECK_FALSE(low.monotone_ok);
    const auto high = check_membership(e, {}, numeric::linspace(7.5, 30.0, 300));
    CHECK(high.domination_ok);
    CHECK(high.monotone_ok);
}

TEST_CASE("auto envelope is a running maximum")
{
    auto e = builtin_default("std_normal");
    const auto grid = numeric::linspace(0.5, 10.0, 200);
    const auto rep = check_membership(e, {1000}, grid, EnvelopeMode::Auto);
    CHECK_FALSE(rep.certified);
    CHECK(rep.domination_ok);
    CHECK(rep.monotone_ok);
    for (std::size_t i = 0; i < rep.h_values.size(); ++i)
        CHECK(rep.envelope_values[i].second >= std::abs(rep.h_values[i].second));

    e.envelope = nullptr;
    CHECK_FALSE(check_membership(e, {}, grid).certified);
}

TEST_CASE("h argument checks")
{
    const auto fr = builtin("frechet", {2.0});
    CHECK_THROWS_AS(h_frechet(fr.spec, -1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(h_weibull(fr.spec, -1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(h_frechet(fr.spec, 2.0, -1.0), DomainError);
    CHECK_THROWS_AS(reflect_weibull(fr.spec), InvalidArgument);
}
