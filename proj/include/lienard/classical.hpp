#pragma once

// Classical layer: equation of motion, numerical orbits, closed-form periodic
// solution and momentum orbit, and phase-portrait contours of H(x, p) = E.

#include "lienard/core_model.hpp"
#include "lienard/errors.hpp"
#include "lienard/params.hpp"

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lienard {

/// Amplitude/phase pair labelling a solution x(t) = A sin φ / (1 − (kA/3ω) cos φ).
struct OrbitParams {
    double A = 0.0;
    double delta = 0.0;
};

enum class OrbitKind { Regular, Singular };

/// Regular iff A < 3ω/k (always regular when k = 0).
OrbitKind classify(const OrbitParams& orbit, const PhysParams& params);

struct TrajectoryMeta {
    std::string integrator;
    double step_size = 0.0;
    std::optional<double> period;
    double max_relative_drift = 0.0;
    double conservation_tol = 0.0;
    bool drift_warning = false;
};

/// Time-sampled orbit together with its momentum and energy record.
struct Trajectory {
    std::vector<double> times;
    std::vector<ClassicalState> states;
    std::vector<double> momenta;
    std::vector<double> energies;
    TrajectoryMeta meta;

    std::size_t size() const { return times.size(); }
};

/// Closed level set H(x, p) = E sampled as two x branches over momentum.
struct PhaseContour {
    double energy = 0.0;
    std::vector<double> p;
    std::vector<double> x_plus;
    std::vector<double> x_minus;
    std::pair<double, double> p_range;
    bool closed = true;
};

struct TurningPoints {
    double p_lo = 0.0;
    double p_hi = 0.0;
    /// False when E ≥ 9ω⁴/2k²: the level set reaches p* and never closes.
    bool closed = true;
};

/// (ẋ, −kxẋ − (k²/9)x³ − ω²x)
Eigen::Vector2d vector_field(const ClassicalState& state, const PhysParams& params);

/// ∂F₁/∂x + ∂F₂/∂ẋ = −kx.
double flow_divergence(const ClassicalState& state, const PhysParams& params);

enum class Integrator { Rk4, Rkf45 };

struct IntegrateOptions {
    Integrator method = Integrator::Rk4;
    double conservation_tol = 1e-8;  ///< relative energy drift that raises the warning flag
    double rkf45_rel_tol = 1e-12;
    std::size_t max_steps = 100'000'000;
};

/// Integrates the equation of motion from `initial` over [0, t_end].
///
/// RK4 uses ⌈t_end/dt⌉ equal steps (so the last sample lands on t_end); RKF45
/// records every accepted step. Throws StepCountError when the step budget is
/// exceeded. Energy drift beyond `conservation_tol` only sets
/// `meta.drift_warning`.
Trajectory integrate_orbit(const ClassicalState& initial, double t_end, double dt, const PhysParams& params,
                           const IntegrateOptions& options = {});

/// Default RK4 step 10⁻³·2π/ω.
inline double default_time_step(const PhysParams& params)
{
    return 1e-3 * 2.0 * std::numbers::pi / params.omega;
}

namespace detail {

template <typename Scalar>
void check_singular_phase(const OrbitParams& orbit, Scalar phase, const PhysParams& params)
{
    using std::acos;
    using std::fmod;
    using std::abs;
    if (params.k == 0.0 || orbit.A < params.regular_amplitude_bound())
        return;
    const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    const Scalar singular = acos(Scalar(3) * Scalar(params.omega) / (Scalar(params.k) * Scalar(orbit.A)));
    // the denominator vanishes at ±θ* modulo 2π
    for (const Scalar target : {singular, -singular}) {
        Scalar d = fmod(phase - target, two_pi);
        if (d < 0)
            d += two_pi;
        if (d < Scalar(1e-9) || two_pi - d < Scalar(1e-9))
            throw SingularityError("orbit evaluated at its singular phase");
    }
}

}  // namespace detail

/// x(t) = A sin(ωt+δ)/(1 − (kA/3ω) cos(ωt+δ)).
template <typename Scalar = double>
Scalar exact_position(const OrbitParams& orbit, Scalar t, const PhysParams& params)
{
    using std::cos;
    using std::sin;
    const Scalar phase = Scalar(params.omega) * t + Scalar(orbit.delta);
    detail::check_singular_phase(orbit, phase, params);
    const Scalar c = Scalar(params.k) * Scalar(orbit.A) / (Scalar(3) * Scalar(params.omega));
    return Scalar(orbit.A) * sin(phase) / (Scalar(1) - c * cos(phase));
}

/// ẋ(t) = Aω(cos φ − kA/3ω)/(1 − (kA/3ω) cos φ)².
template <typename Scalar = double>
Scalar exact_velocity(const OrbitParams& orbit, Scalar t, const PhysParams& params)
{
    using std::cos;
    const Scalar phase = Scalar(params.omega) * t + Scalar(orbit.delta);
    detail::check_singular_phase(orbit, phase, params);
    const Scalar c = Scalar(params.k) * Scalar(orbit.A) / (Scalar(3) * Scalar(params.omega));
    const Scalar denom = Scalar(1) - c * cos(phase);
    return Scalar(orbit.A) * Scalar(params.omega) * (cos(phase) - c) / (denom * denom);
}

/// p(t) = Aω cos(ωt+δ)(1 − (kA/6ω) cos(ωt+δ)); bounded for every A.
template <typename Scalar = double>
Scalar exact_momentum(const OrbitParams& orbit, Scalar t, const PhysParams& params)
{
    using std::cos;
    const Scalar phase = Scalar(params.omega) * t + Scalar(orbit.delta);
    const Scalar c = Scalar(params.k) * Scalar(orbit.A) / (Scalar(6) * Scalar(params.omega));
    return Scalar(orbit.A) * Scalar(params.omega) * cos(phase) * (Scalar(1) - c * cos(phase));
}

/// Initial state (x(0), ẋ(0)) of the closed-form orbit.
ClassicalState exact_state(const OrbitParams& orbit, double t, const PhysParams& params);

/// E = ½A²ω².
double orbit_energy(const OrbitParams& orbit, const PhysParams& params);

/// Momenta where U(p) = E: p = (3ω²/2k)(1 − y²) at y = 1 ± k√(2E)/(3ω²).
TurningPoints turning_points(double energy, const PhysParams& params);

struct PhaseContourOptions {
    /// Lower end in y for open level sets (E ≥ 9ω⁴/2k²), as a fraction of the upper end.
    double open_y_floor = 1e-2;
};

/// Samples the level set H = E uniformly in y = √(1 − 2kp/3ω²), ordered by increasing p.
PhaseContour phase_contour(double energy, int n_points, const PhysParams& params,
                           const PhaseContourOptions& options = {});

/// Mean spacing of linearly interpolated upward zero crossings of x(t).
double measure_period(const Trajectory& trajectory);

}  // namespace lienard
