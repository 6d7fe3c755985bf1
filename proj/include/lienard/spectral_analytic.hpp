#pragma once

// Closed-form quantum solution in momentum space: ordering parameters,
// substitution chain, bound and broken eigenfunctions, normalization and the
// harmonic limit.

#include "lienard/core_model.hpp"
#include "lienard/errors.hpp"
#include "lienard/hermite.hpp"
#include "lienard/params.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string_view>
#include <type_traits>

namespace lienard {

// ---------------------------------------------------------------------------
// Ordering parameters

/// von Roos exponents (α, β, γ) and similarity exponent d.
///
/// `Number` is `double` for ordinary use or an exact rational type (e.g.
/// boost::rational<long long>) for checking the constraint algebra.
template <typename Number>
struct BasicOrderingParams {
    Number alpha;
    Number beta;
    Number gamma;
    Number d;

    /// α + β + γ; must equal −1.
    Number exponent_sum() const { return alpha + beta + gamma; }

    /// 4α(α + β + 1); must equal −1/4 for the Hermite reduction.
    Number solvability() const { return Number(4) * alpha * (alpha + beta + Number(1)); }

    /// d < −1/4 gives bounded transformed eigenfunctions.
    bool bounded_transform() const { return d < Number(-1) / Number(4); }

    static BasicOrderingParams symmetric_default()
    {
        return {Number(-1) / Number(4), Number(-1) / Number(2), Number(-1) / Number(4), Number(-1) / Number(2)};
    }
};

using OrderingParams = BasicOrderingParams<double>;

/// Throws DomainError unless both ordering constraints hold (to `tol` for floating types).
template <typename Number>
void validate_ordering(const BasicOrderingParams<Number>& op, double tol = 1e-14)
{
    const auto off = [tol](const Number& value, const Number& target) {
        if constexpr (std::is_floating_point_v<Number>)
            return std::abs(value - target) > tol;
        else
            return value != target;
    };
    if (off(op.exponent_sum(), Number(-1)))
        throw DomainError("ordering parameters must satisfy alpha + beta + gamma = -1");
    if (off(op.solvability(), Number(-1) / Number(4)))
        throw DomainError("ordering parameters must satisfy 4 alpha (alpha + beta + 1) = -1/4");
}

// ---------------------------------------------------------------------------
// Substitutions

enum class Sector { Bound, Broken };

std::string_view to_string(Sector sector);

/// y = √(1 − 2kp/3ω²) on p ≤ p*.
double p_to_y(double p, const PhysParams& params);
/// p = (3ω²/2k)(1 − y²) on y ≥ 0.
double y_to_p(double y, const PhysParams& params);
/// ỹ = √(2kp/3ω² − 1) on p ≥ p*.
double p_to_ytilde(double p, const PhysParams& params);
/// p = (3ω²/2k)(1 + ỹ²) on ỹ ≥ 0.
double ytilde_to_p(double y_tilde, const PhysParams& params);

/// Sector coordinates at one momentum. Both y and ỹ are set exactly at p*.
struct SubstitutionFrame {
    double p = 0.0;
    std::optional<double> y;
    std::optional<double> y_tilde;
    std::complex<double> z;  ///< a^{1/4}(y − 1) in the bound sector, a^{1/4}(ỹ + i) in the broken one
};

SubstitutionFrame substitution_frame(double p, const PhysParams& params);

/// ψ(y), φ(y), χ(z) of the symmetric-ordering reduction at level n (unit N_n):
/// ψ = e^{−(√a/2)y² + √a y}φ, φ = y^{−1/2}χ, χ = H_n(a^{1/4}(y − 1)).
struct TransformationChain {
    double psi = 0.0;
    double phi = 0.0;
    double chi = 0.0;
    double z = 0.0;
};

TransformationChain transformation_chain(int n, double y, const PhysParams& params);

// ---------------------------------------------------------------------------
// Energies

/// E_n = (n + ½)ħω.
double bound_energy(int n, const PhysParams& params);
/// E_n = −(n + ½)ħω.
double broken_energy(int n, const PhysParams& params);

// ---------------------------------------------------------------------------
// Eigenfunctions

namespace detail {

struct SpectralScales {
    double sqrt_a;    ///< 9ω³/(ħk²)
    double quart_a;   ///< a^{1/4} = 3ω^{3/2}/(√ħ k)
};

inline SpectralScales spectral_scales(const PhysParams& params)
{
    validate(params);
    const double w = params.omega;
    return {9.0 * w * w * w / (params.hbar * params.k * params.k),
            3.0 * w * std::sqrt(w) / (std::sqrt(params.hbar) * params.k)};
}

/// Φ/scaled_norm in the bound sector: y^{1/2}e^{−(√a/2)(y−1)²}H_n(a^{1/4}(y−1)).
/// `log_shift` is added to the exponent before exponentiation.
template <typename Scalar>
Scalar bound_core(int n, Scalar p, const PhysParams& params, Scalar log_shift, Scalar y_power)
{
    using std::exp;
    using std::log;
    using std::sqrt;
    const SpectralScales sc = spectral_scales(params);
    const Scalar s = threshold_fraction(p, params);
    if (s >= Scalar(1))
        return Scalar(0);
    const Scalar y = sqrt(Scalar(1) - s);
    const Scalar ym1 = sqrt_one_minus_minus_one(s);
    const Scalar z = Scalar(sc.quart_a) * ym1;
    const Scalar exponent = log_shift - Scalar(sc.sqrt_a) / Scalar(2) * ym1 * ym1 + y_power * log(y);
    return hermite(n, z) * exp(exponent);
}

}  // namespace detail

/// Bound-sector Φ_n(p) with the literal constant `norm` = Ñ_n:
/// Ñ(1 − 2kp/3ω²)^{1/4} exp(−(9ω³/2ħk²)(1 − 2kp/3ω² − 2√(1 − 2kp/3ω²))) H_n(...),
/// and 0 for p ≥ p*. Evaluated in log space so that tiny k does not overflow.
template <typename Scalar = double>
Scalar bound_wavefunction(int n, Scalar p, const PhysParams& params, double norm)
{
    using std::log;
    using std::abs;
    if (norm == 0.0)
        return Scalar(0);
    const detail::SpectralScales sc = detail::spectral_scales(params);
    const Scalar shift = log(Scalar(abs(norm))) + Scalar(sc.sqrt_a) / Scalar(2);
    const Scalar value = detail::bound_core(n, p, params, shift, Scalar(0.5));
    return norm < 0.0 ? -value : value;
}

/// Bound-sector Φ_n(p) parametrised by the Gaussian-centred constant
/// scaled_norm = Ñ_n·e^{9ω³/2ħk²}, which stays O(1) for unit-normalized states.
template <typename Scalar = double>
Scalar bound_wavefunction_scaled(int n, Scalar p, const PhysParams& params, double scaled_norm)
{
    return Scalar(scaled_norm) * detail::bound_core(n, p, params, Scalar(0), Scalar(0.5));
}

/// ψ_n(p) of the symmetric ordering: the bound form divided by (1 − 2kp/3ω²)^{1/2}.
/// Singular at p*; zero beyond it.
template <typename Scalar = double>
Scalar symmetric_ordering_wavefunction(int n, Scalar p, const PhysParams& params, double norm = 1.0)
{
    using std::log;
    using std::abs;
    const Scalar ps = Scalar(params.p_star());
    if (p == ps)
        throw SingularityError("symmetric-ordering eigenfunction is singular at p*");
    if (p > ps || norm == 0.0)
        return Scalar(0);
    const detail::SpectralScales sc = detail::spectral_scales(params);
    const Scalar shift = log(Scalar(abs(norm))) + Scalar(sc.sqrt_a) / Scalar(2);
    const Scalar value = detail::bound_core(n, p, params, shift, Scalar(-0.5));
    return norm < 0.0 ? -value : value;
}

/// Broken-sector Φ_n(p) = Ñ ỹ^{1/2} exp(−(9ω³/2ħk²)(ỹ² + 2iỹ)) H_n(a^{1/4}(ỹ + i)), 0 for p ≤ p*.
template <typename Scalar = double>
std::complex<Scalar> broken_wavefunction(int n, Scalar p, const PhysParams& params, double norm)
{
    using std::exp;
    using std::sqrt;
    using Complex = std::complex<Scalar>;
    const detail::SpectralScales sc = detail::spectral_scales(params);
    const Scalar s = detail::threshold_fraction(p, params);
    if (s <= Scalar(1))
        return Complex(0);
    const Scalar yt = sqrt(s - Scalar(1));
    const Scalar half_sqrt_a = Scalar(sc.sqrt_a) / Scalar(2);
    const Complex phase = exp(Complex(-half_sqrt_a * yt * yt, -Scalar(2) * half_sqrt_a * yt));
    const Complex z = Scalar(sc.quart_a) * Complex(yt, Scalar(1));
    return Scalar(norm) * sqrt(yt) * phase * hermite(n, z);
}

/// Unit-normalized harmonic-oscillator momentum eigenfunction
/// (2ⁿ√π n!√(ħω))^{−1/2} e^{−p²/2ħω} H_n(p/√(ħω)). Independent of k.
template <typename Scalar = double>
Scalar harmonic_limit_wavefunction(int n, Scalar p, const PhysParams& params)
{
    using std::exp;
    using std::sqrt;
    validate(params, HarmonicLimit::Allow);
    if (n < 0)
        throw DomainError("level index must be non-negative");
    const Scalar hw = Scalar(params.hbar) * Scalar(params.omega);
    const Scalar u = p / sqrt(hw);
    const Scalar log_norm = Scalar(n) * std::numbers::ln2_v<Scalar> + std::log(std::numbers::pi_v<Scalar>) / 2
                            + std::lgamma(Scalar(n + 1)) + std::log(hw) / 2;
    return exp(-log_norm / 2 - u * u / 2) * hermite(n, u);
}

// ---------------------------------------------------------------------------
// Eigenstates and normalization

/// A quantum level with a fixed constant. Immutable; evaluation is pure.
struct EigenState {
    int n = 0;
    Sector sector = Sector::Bound;
    double energy = 0.0;
    /// Ñ_n for the bound sector (may underflow to 0 for very small k; see
    /// scaled_norm), the free scale for the broken sector.
    double norm_constant = 0.0;
    /// Bound: Ñ_n·e^{9ω³/2ħk²}. Broken: equal to norm_constant.
    double scaled_norm = 0.0;
    PhysParams params;

    template <typename Scalar = double>
    std::complex<Scalar> amplitude(Scalar p) const
    {
        if (sector == Sector::Bound)
            return {bound_wavefunction_scaled<Scalar>(n, p, params, scaled_norm), Scalar(0)};
        return broken_wavefunction<Scalar>(n, p, params, scaled_norm);
    }

    std::complex<double> operator()(double p) const { return amplitude<double>(p); }
};

/// Bound state with the literal constant Ñ_n = norm.
EigenState make_bound_state(int n, const PhysParams& params, double norm);

/// Bound state normalized to ∫|Φ|²dp = 1 by quadrature.
EigenState normalized_bound_state(int n, const PhysParams& params);

/// Broken state; without an explicit constant the amplitude is scaled to unit
/// sup-norm on the reference grid of broken_reference_norm.
EigenState make_broken_state(int n, const PhysParams& params, std::optional<double> norm = std::nullopt);

/// 1/max|Φ_n| (unit constant) over 4001 equispaced ỹ in [0, (√(2n+1) + 8)/a^{1/4}].
double broken_reference_norm(int n, const PhysParams& params);

struct NormalizationOptions {
    int max_level = 10;
    double tolerance = 1e-14;
};

struct NormalizationResult {
    int n = 0;
    double numeric_value = 0.0;      ///< Ñ_n from quadrature (may underflow for tiny k)
    double log_numeric_value = 0.0;  ///< log Ñ_n, always finite
    double scaled_norm = 0.0;        ///< Ñ_n·e^{9ω³/2ħk²}
    double closed_form_value = 0.0;        ///< closed-form constant with the same g(a)
    double g_a = 0.0;                ///< ∫_0^{p*}|Φ_n|²dp with Ñ_n = 1
    double left_integral = 0.0;      ///< ∫_{−∞}^0|Φ_n|²dp with Ñ_n = 1
};

/// Normalizes Φ_n by adaptive Gauss–Kronrod quadrature in the Hermite
/// variable z = a^{1/4}(y − 1), split at p = 0.
NormalizationResult normalize_bound(int n, const PhysParams& params, const NormalizationOptions& options = {});

/// (e^{−9ω³/k²ħ} / (√(ħω)(2^{n−1}√π n!(1 + 9ω³/k²ħ) + g(a))))^{1/2}; reported for comparison.
double closed_form_norm_constant(int n, const PhysParams& params, double g_a);

}  // namespace lienard
