#include "lienard/ode.hpp"
#include "lienard/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace lienard;
using doctest::Approx;

TEST_CASE("Gauss-Legendre weights sum to the interval length")
{
    for (int order : {1, 2, 5, 20, 64, 128}) {
        const quadrature::GaussLegendre<double> rule(order);
        double sum = 0.0;
        for (double w : rule.weights())
            sum += w;
        CAPTURE(order);
        CHECK(sum == Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("Gauss-Legendre is exact for polynomials up to degree 2n - 1")
{
    const quadrature::GaussLegendre<double> rule(6);
    for (int deg = 0; deg <= 11; ++deg) {
        const double value = rule.integrate([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0);
        CAPTURE(deg);
        CHECK(value == Approx(1.0 / (deg + 1)).epsilon(1e-14));
    }
}

TEST_CASE("Gauss-Legendre nodes are symmetric roots of P_n")
{
    const quadrature::GaussLegendre<long double> rule(9);
    const auto& x = rule.nodes();
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(static_cast<double>(x[i] + x[x.size() - 1 - i]) == Approx(0.0).epsilon(1e-18).scale(1.0));
    // P_9 through the explicit three-term recurrence
    for (long double xi : x) {
        long double p0 = 1.0L, p1 = xi;
        for (int n = 1; n < 9; ++n) {
            const long double p2 = ((2 * n + 1) * xi * p1 - n * p0) / (n + 1);
            p0 = p1;
            p1 = p2;
        }
        CHECK(std::abs(static_cast<double>(p1)) < 1e-15);
    }
}

TEST_CASE("composite rule integrates smooth periodic data")
{
    const quadrature::GaussLegendre<double> rule(16);
    const double v = rule.integrate_composite([](double x) { return std::exp(std::cos(x)); }, 0.0,
                                              2.0 * std::numbers::pi, 8);
    // 2π I₀(1)
    CHECK(v == Approx(2.0 * std::numbers::pi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-14));
}

TEST_CASE("invalid order is rejected")
{
    CHECK_THROWS_AS(quadrature::GaussLegendre<double>(0), std::invalid_argument);
}

TEST_CASE("RK4 step has fourth-order local error")
{
    using V = ode::State<double, 1>;
    const auto rhs = [](double, const V& y) { return V(y[0]); };
    const auto err = [&](double h) { return std::abs(ode::rk4_step(rhs, 0.0, V(1.0), h)[0] - std::exp(h)); };
    // local error ~ h⁵/120
    CHECK(err(0.1) / err(0.05) == Approx(32.0).epsilon(0.05));
}

TEST_CASE("RKF45 integrates the harmonic oscillator in both directions")
{
    using V = ode::State<double, 2>;
    const auto rhs = [](double, const V& y) { return V(y[1], -y[0]); };
    ode::AdaptiveOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-14;
    ode::AdaptiveStats stats;
    int calls = 0;
    const V fwd = ode::integrate_rkf45(rhs, 0.0, 10.0, V(0.0, 1.0), opts,
                                       [&](double, const V&) { ++calls; }, &stats);
    CHECK(fwd[0] == Approx(std::sin(10.0)).epsilon(1e-9));
    CHECK(fwd[1] == Approx(std::cos(10.0)).epsilon(1e-9));
    CHECK(calls == static_cast<int>(stats.accepted));
    const V back = ode::integrate_rkf45(rhs, 10.0, 0.0, fwd, opts);
    CHECK(std::abs(back[0]) < 1e-9);
    CHECK(back[1] == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("RKF45 enforces the step budget")
{
    using V = ode::State<double, 1>;
    ode::AdaptiveOptions opts;
    opts.max_steps = 3;
    opts.rel_tol = 1e-14;
    CHECK_THROWS_AS(ode::integrate_rkf45([](double, const V& y) { return V(y[0]); }, 0.0, 50.0, V(1.0), opts),
                    StepCountError);
}
