#pragma once

// Closed-form scalar maps of the Liénard oscillator: mass profile, stiffness,
// momentum potential, Hamiltonian, Lagrangian and the conjugate momentum.
//
// The evaluators are templated on the scalar so that verification code can
// run them in extended precision; `double` is the default everywhere.

#include "lienard/errors.hpp"
#include "lienard/params.hpp"

#include <cmath>

namespace lienard {

/// Phase-space point (x, ẋ) of the classical oscillator.
struct ClassicalState {
    double x = 0.0;
    double xdot = 0.0;
};

/// Dimensionless constants of the momentum-space eigenproblem.
struct ScaledSpectralParams {
    double E_tilde = 0.0;  ///< 18ω²E/(ħ²k²)
    double a = 0.0;        ///< 3⁴ω⁶/(ħ²k⁴)
    double sqrt_a = 0.0;
};

namespace detail {

/// 2kp/(3ω²), the fraction of the way to the momentum threshold.
template <typename Scalar>
Scalar threshold_fraction(Scalar p, const PhysParams& params)
{
    const Scalar w = params.omega;
    return Scalar(2) * Scalar(params.k) * p / (Scalar(3) * w * w);
}

/// √(1 − s) − 1 without cancellation for small s.
template <typename Scalar>
Scalar sqrt_one_minus_minus_one(Scalar s)
{
    using std::sqrt;
    return -s / (Scalar(1) + sqrt(Scalar(1) - s));
}

template <typename Scalar>
Scalar lagrangian_denominator(const Scalar x, const Scalar xdot, const PhysParams& params)
{
    const Scalar k = params.k;
    const Scalar w = params.omega;
    return k * xdot + k * k * x * x / Scalar(3) + Scalar(3) * w * w;
}

}  // namespace detail

/// f(p) = ω²(1 − 2kp/3ω²). Defined for every p, negative beyond p*.
template <typename Scalar = double>
Scalar stiffness(Scalar p, const PhysParams& params)
{
    const Scalar w = params.omega;
    return w * w * (Scalar(1) - detail::threshold_fraction(p, params));
}

/// m(p) = 1/f(p) on p < p*.
template <typename Scalar = double>
Scalar mass_profile(Scalar p, const PhysParams& params)
{
    validate(params);
    if (!(p < Scalar(params.p_star())))
        throw DomainError("mass profile diverges for p >= p*");
    return Scalar(1) / stiffness(p, params);
}

/// U(p) = (9ω⁴/2k²)(√(1 − 2kp/3ω²) − 1)² on the real branch p ≤ p*.
template <typename Scalar = double>
Scalar potential(Scalar p, const PhysParams& params)
{
    validate(params);
    if (p > Scalar(params.p_star()))
        throw DomainError("potential has no real branch for p > p*");
    const Scalar k = params.k;
    const Scalar w = params.omega;
    const Scalar s = detail::threshold_fraction(p, params);
    const Scalar ym1 = s >= Scalar(1) ? Scalar(-1) : detail::sqrt_one_minus_minus_one(s);
    return Scalar(9) * w * w * w * w / (Scalar(2) * k * k) * ym1 * ym1;
}

/// H(x, p) = x²/(2m(p)) + U(p), even in x.
template <typename Scalar = double>
Scalar hamiltonian(Scalar x, Scalar p, const PhysParams& params)
{
    const Scalar u = potential(p, params);
    return stiffness(p, params) * x * x / Scalar(2) + u;
}

template <typename Scalar = double>
Scalar lagrangian(Scalar x, Scalar xdot, const PhysParams& params)
{
    validate(params);
    const Scalar k = params.k;
    const Scalar w = params.omega;
    const Scalar denom = detail::lagrangian_denominator(x, xdot, params);
    if (denom == Scalar(0))
        throw SingularityError("Lagrangian denominator kxdot + k^2 x^2/3 + 3 omega^2 vanishes");
    const Scalar w2 = w * w;
    return Scalar(27) * w2 * w2 * w2 / (Scalar(2) * k * k) / denom + Scalar(3) * w2 / (Scalar(2) * k) * xdot
           - Scalar(9) * w2 * w2 / (Scalar(2) * k * k);
}

template <typename Scalar = double>
Scalar lagrangian(const ClassicalState& state, const PhysParams& params)
{
    return lagrangian<Scalar>(Scalar(state.x), Scalar(state.xdot), params);
}

/// p = ∂L/∂ẋ. Always strictly below p*.
template <typename Scalar = double>
Scalar conjugate_momentum(Scalar x, Scalar xdot, const PhysParams& params)
{
    validate(params);
    const Scalar k = params.k;
    const Scalar w2 = Scalar(params.omega) * Scalar(params.omega);
    const Scalar denom = detail::lagrangian_denominator(x, xdot, params);
    if (denom == Scalar(0))
        throw SingularityError("conjugate momentum undefined: Lagrangian denominator vanishes");
    return -Scalar(27) * w2 * w2 * w2 / (Scalar(2) * k * denom * denom) + Scalar(3) * w2 / (Scalar(2) * k);
}

template <typename Scalar = double>
Scalar conjugate_momentum(const ClassicalState& state, const PhysParams& params)
{
    return conjugate_momentum<Scalar>(Scalar(state.x), Scalar(state.xdot), params);
}

/// Scaled energy Ẽ = 18ω²E/(ħ²k²) and the constant a = 3⁴ω⁶/(ħ²k⁴).
ScaledSpectralParams scaled_params(double energy, const PhysParams& params);

/// Inverse of the energy scaling: E = Ẽħ²k²/(18ω²).
double unscale_energy(double E_tilde, const PhysParams& params);

}  // namespace lienard
