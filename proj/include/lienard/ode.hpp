#pragma once

// Explicit Runge–Kutta integrators for small fixed-size systems.
//
// States are Eigen fixed-size column vectors; the right-hand side is any
// callable `Vec f(Scalar t, const Vec& y)`.

#include "lienard/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace lienard::ode {

template <typename Scalar, int Dim>
using State = Eigen::Matrix<Scalar, Dim, 1>;

/// One classical fourth-order Runge–Kutta step of size h.
template <typename Rhs, typename Scalar, int Dim>
State<Scalar, Dim> rk4_step(Rhs&& rhs, Scalar t, const State<Scalar, Dim>& y, Scalar h)
{
    const State<Scalar, Dim> k1 = rhs(t, y);
    const State<Scalar, Dim> k2 = rhs(t + h / 2, (y + (h / 2) * k1).eval());
    const State<Scalar, Dim> k3 = rhs(t + h / 2, (y + (h / 2) * k2).eval());
    const State<Scalar, Dim> k4 = rhs(t + h, (y + h * k3).eval());
    return y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

struct AdaptiveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    double initial_step = 0.0;  ///< 0 picks |t1 − t0|·1e-3
    double min_step = 0.0;      ///< 0 picks 1e-14·|t1 − t0|
    std::size_t max_steps = 10'000'000;
};

struct AdaptiveStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

/// Runge–Kutta–Fehlberg 4(5) from t0 to t1 (either direction).
///
/// The fifth-order solution is propagated; the embedded fourth-order one only
/// drives the step-size control. `observer(t, y)` is called after every
/// accepted step, including the final one that lands exactly on t1.
template <typename Rhs, typename Scalar, int Dim, typename Observer>
State<Scalar, Dim> integrate_rkf45(Rhs&& rhs, Scalar t0, Scalar t1, State<Scalar, Dim> y,
                                   const AdaptiveOptions& opts, Observer&& observer,
                                   AdaptiveStats* stats = nullptr)
{
    using std::abs;
    using std::max;
    using std::min;
    using std::pow;
    using Vec = State<Scalar, Dim>;

    const Scalar span = t1 - t0;
    if (span == Scalar(0))
        return y;
    const Scalar dir = span > 0 ? Scalar(1) : Scalar(-1);
    const Scalar length = abs(span);
    Scalar h = opts.initial_step > 0 ? Scalar(opts.initial_step) : length * Scalar(1e-3);
    const Scalar h_min = opts.min_step > 0 ? Scalar(opts.min_step) : length * Scalar(1e-14);

    // Fehlberg tableau
    constexpr double a21 = 1.0 / 4.0;
    constexpr double a31 = 3.0 / 32.0, a32 = 9.0 / 32.0;
    constexpr double a41 = 1932.0 / 2197.0, a42 = -7200.0 / 2197.0, a43 = 7296.0 / 2197.0;
    constexpr double a51 = 439.0 / 216.0, a52 = -8.0, a53 = 3680.0 / 513.0, a54 = -845.0 / 4104.0;
    constexpr double a61 = -8.0 / 27.0, a62 = 2.0, a63 = -3544.0 / 2565.0, a64 = 1859.0 / 4104.0,
                     a65 = -11.0 / 40.0;
    constexpr double b1 = 16.0 / 135.0, b3 = 6656.0 / 12825.0, b4 = 28561.0 / 56430.0, b5 = -9.0 / 50.0,
                     b6 = 2.0 / 55.0;
    constexpr double e1 = 1.0 / 360.0, e3 = -128.0 / 4275.0, e4 = -2197.0 / 75240.0, e5 = 1.0 / 50.0,
                     e6 = 2.0 / 55.0;

    Scalar t = t0;
    std::size_t steps = 0;
    while (dir * (t1 - t) > 0) {
        if (++steps > opts.max_steps)
            throw StepCountError("RKF45 exceeded the maximum number of steps");
        bool last = false;
        if (h >= abs(t1 - t)) {
            h = abs(t1 - t);
            last = true;
        }
        const Scalar hs = dir * h;
        const Vec k1 = rhs(t, y);
        const Vec k2 = rhs(t + hs / 4, (y + hs * Scalar(a21) * k1).eval());
        const Vec k3 = rhs(t + hs * Scalar(3.0 / 8.0), (y + hs * (Scalar(a31) * k1 + Scalar(a32) * k2)).eval());
        const Vec k4 = rhs(t + hs * Scalar(12.0 / 13.0),
                           (y + hs * (Scalar(a41) * k1 + Scalar(a42) * k2 + Scalar(a43) * k3)).eval());
        const Vec k5 = rhs(t + hs, (y + hs * (Scalar(a51) * k1 + Scalar(a52) * k2 + Scalar(a53) * k3
                                              + Scalar(a54) * k4)).eval());
        const Vec k6 = rhs(t + hs / 2, (y + hs * (Scalar(a61) * k1 + Scalar(a62) * k2 + Scalar(a63) * k3
                                                  + Scalar(a64) * k4 + Scalar(a65) * k5)).eval());
        const Vec y5 = y + hs * (Scalar(b1) * k1 + Scalar(b3) * k3 + Scalar(b4) * k4 + Scalar(b5) * k5
                                 + Scalar(b6) * k6);
        const Vec err_vec = hs * (Scalar(e1) * k1 + Scalar(e3) * k3 + Scalar(e4) * k4 + Scalar(e5) * k5
                                  + Scalar(e6) * k6);

        Scalar err = 0;
        for (int i = 0; i < y.size(); ++i) {
            const Scalar scale = Scalar(opts.abs_tol) + Scalar(opts.rel_tol) * max(abs(y[i]), abs(y5[i]));
            err = max(err, abs(err_vec[i]) / scale);
        }
        if (!std::isfinite(static_cast<double>(err)))
            err = Scalar(1e10);

        if (err <= Scalar(1) || h <= h_min) {
            t = last ? t1 : t + hs;
            y = y5;
            if (stats)
                ++stats->accepted;
            observer(t, static_cast<const Vec&>(y));
            const Scalar grow = err > 0 ? Scalar(0.9) * pow(err, Scalar(-0.2)) : Scalar(5);
            h *= min(Scalar(5), max(Scalar(0.2), grow));
        } else {
            if (stats)
                ++stats->rejected;
            h *= max(Scalar(0.1), Scalar(0.9) * pow(err, Scalar(-0.25)));
            if (h < h_min)
                h = h_min;
        }
    }
    return y;
}

template <typename Rhs, typename Scalar, int Dim>
State<Scalar, Dim> integrate_rkf45(Rhs&& rhs, Scalar t0, Scalar t1, const State<Scalar, Dim>& y,
                                   const AdaptiveOptions& opts)
{
    return integrate_rkf45(std::forward<Rhs>(rhs), t0, t1, y, opts, [](Scalar, const State<Scalar, Dim>&) {});
}

}  // namespace lienard::ode
