#include "lienard/classical.hpp"

#include "lienard/ode.hpp"

#include <algorithm>
#include <cmath>

namespace lienard {

OrbitKind classify(const OrbitParams& orbit, const PhysParams& params)
{
    if (params.k == 0.0)
        return OrbitKind::Regular;
    return orbit.A < params.regular_amplitude_bound() ? OrbitKind::Regular : OrbitKind::Singular;
}

Eigen::Vector2d vector_field(const ClassicalState& state, const PhysParams& params)
{
    const double k = params.k;
    const double w = params.omega;
    const double x = state.x;
    const double v = state.xdot;
    return {v, -k * x * v - k * k / 9.0 * x * x * x - w * w * x};
}

double flow_divergence(const ClassicalState& state, const PhysParams& params)
{
    return -params.k * state.x;
}

namespace {

void record(Trajectory& traj, double t, const Eigen::Vector2d& y, const PhysParams& params)
{
    const ClassicalState s{y[0], y[1]};
    const double p = conjugate_momentum(s, params);
    traj.times.push_back(t);
    traj.states.push_back(s);
    traj.momenta.push_back(p);
    traj.energies.push_back(hamiltonian(s.x, p, params));
}

}  // namespace

Trajectory integrate_orbit(const ClassicalState& initial, double t_end, double dt, const PhysParams& params,
                           const IntegrateOptions& options)
{
    validate(params);
    if (!(dt > 0.0) || !(t_end > 0.0))
        throw DomainError("integrate_orbit requires dt > 0 and t_end > 0");

    const auto rhs = [&params](double, const Eigen::Vector2d& y) {
        return vector_field(ClassicalState{y[0], y[1]}, params);
    };

    Trajectory traj;
    Eigen::Vector2d y{initial.x, initial.xdot};
    record(traj, 0.0, y, params);

    if (options.method == Integrator::Rk4) {
        const double raw_steps = std::ceil(t_end / dt * (1.0 - 1e-12));
        if (!(raw_steps <= static_cast<double>(options.max_steps)))
            throw StepCountError("integrate_orbit: t_end/dt exceeds the step budget");
        const auto steps = static_cast<std::size_t>(std::max(1.0, raw_steps));
        const double h = t_end / static_cast<double>(steps);
        traj.times.reserve(steps + 1);
        traj.states.reserve(steps + 1);
        traj.momenta.reserve(steps + 1);
        traj.energies.reserve(steps + 1);
        for (std::size_t i = 1; i <= steps; ++i) {
            y = ode::rk4_step(rhs, static_cast<double>(i - 1) * h, y, h);
            record(traj, static_cast<double>(i) * h, y, params);
        }
        traj.meta.integrator = "rk4";
        traj.meta.step_size = h;
    } else {
        ode::AdaptiveOptions opts;
        opts.rel_tol = options.rkf45_rel_tol;
        opts.abs_tol = 1e-14;
        opts.initial_step = dt;
        opts.max_steps = options.max_steps;
        ode::integrate_rkf45(rhs, 0.0, t_end, y, opts,
                             [&](double t, const Eigen::Vector2d& state) { record(traj, t, state, params); });
        traj.meta.integrator = "rkf45";
        traj.meta.step_size = dt;
    }

    const double e0 = traj.energies.front();
    double drift = 0.0;
    for (double e : traj.energies)
        drift = std::max(drift, std::abs(e - e0));
    traj.meta.max_relative_drift = drift / std::max(std::abs(e0), 1.0);
    traj.meta.conservation_tol = options.conservation_tol;
    traj.meta.drift_warning = traj.meta.max_relative_drift > options.conservation_tol;
    try {
        traj.meta.period = measure_period(traj);
    } catch (const InsufficientCrossingsError&) {
        traj.meta.period.reset();
    }
    return traj;
}

ClassicalState exact_state(const OrbitParams& orbit, double t, const PhysParams& params)
{
    return {exact_position(orbit, t, params), exact_velocity(orbit, t, params)};
}

double orbit_energy(const OrbitParams& orbit, const PhysParams& params)
{
    return 0.5 * orbit.A * orbit.A * params.omega * params.omega;
}

TurningPoints turning_points(double energy, const PhysParams& params)
{
    validate(params);
    if (!(energy >= 0.0))
        throw DomainError("turning points require E >= 0");
    const double w2 = params.omega * params.omega;
    const double scale = 3.0 * w2 / (2.0 * params.k);
    const double s = params.k * std::sqrt(2.0 * energy) / (3.0 * w2);
    TurningPoints tp;
    // p(y) = scale·(1 − y)(1 + y) evaluated at y = 1 ± s
    tp.p_lo = -scale * s * (2.0 + s);
    if (s <= 1.0) {
        tp.p_hi = scale * s * (2.0 - s);
        tp.closed = s < 1.0;
    } else {
        tp.p_hi = params.p_star();
        tp.closed = false;
    }
    return tp;
}

PhaseContour phase_contour(double energy, int n_points, const PhysParams& params, const PhaseContourOptions& options)
{
    validate(params);
    if (!(energy > 0.0))
        throw DomainError("phase contour requires E > 0");
    if (n_points < 2)
        throw DomainError("phase contour requires at least two points");

    const double w2 = params.omega * params.omega;
    const double scale = 3.0 * w2 / (2.0 * params.k);
    const double s = params.k * std::sqrt(2.0 * energy) / (3.0 * w2);
    const TurningPoints tp = turning_points(energy, params);

    const double y_top = 1.0 + s;
    const double y_bottom = tp.closed ? 1.0 - s : options.open_y_floor * y_top;

    PhaseContour contour;
    contour.energy = energy;
    contour.closed = tp.closed;
    contour.p.reserve(n_points);
    contour.x_plus.reserve(n_points);
    contour.x_minus.reserve(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double y = y_top - (y_top - y_bottom) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double p = scale * (1.0 - y) * (1.0 + y);
        double x = 0.0;
        const bool endpoint = i == 0 || (tp.closed && i == n_points - 1);
        if (!endpoint) {
            const double excess = std::max(0.0, energy - potential(p, params));
            x = std::sqrt(2.0 * excess / stiffness(p, params));
        }
        contour.p.push_back(p);
        contour.x_plus.push_back(x);
        contour.x_minus.push_back(-x);
    }
    contour.p_range = {contour.p.front(), contour.p.back()};
    return contour;
}

double measure_period(const Trajectory& trajectory)
{
    std::vector<double> crossings;
    const auto& s = trajectory.states;
    const auto& t = trajectory.times;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double x0 = s[i].x;
        const double x1 = s[i + 1].x;
        if (x0 <= 0.0 && x1 > 0.0) {
            const double frac = -x0 / (x1 - x0);
            crossings.push_back(t[i] + frac * (t[i + 1] - t[i]));
        }
    }
    if (crossings.size() < 2)
        throw InsufficientCrossingsError("period needs at least two upward zero crossings of x");
    return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

}  // namespace lienard
