#pragma once

// Independent numerical checks of the momentum-space solution: residuals of
// the similarity-transformed Schrödinger operator and a shooting eigensolver in
// the regularized coordinate y = √(1 − 2kp/3ω²).

#include "lienard/core_model.hpp"
#include "lienard/errors.hpp"
#include "lienard/params.hpp"
#include "lienard/spectral_analytic.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lienard {

// ---------------------------------------------------------------------------
// Transformed Hamiltonian

/// H̃ applied to a function given by its value and second derivative at p:
/// −(ħ²ω²/2)S f'' − (ħ²k²/24ω²) f/S + (9ω⁴/2k²)(√S − 1)² f with S = 1 − 2kp/3ω².
/// For S < 0 the root continues to i√(−S).
template <typename Scalar>
std::complex<Scalar> apply_transformed_hamiltonian(std::complex<Scalar> value, std::complex<Scalar> second,
                                                   Scalar p, const PhysParams& params)
{
    using std::sqrt;
    using Complex = std::complex<Scalar>;
    validate(params);
    const Scalar S = Scalar(1) - detail::threshold_fraction(p, params);
    if (S == Scalar(0))
        throw SingularityError("transformed Hamiltonian is singular at p*");
    const Scalar hb = params.hbar;
    const Scalar w = params.omega;
    const Scalar k = params.k;
    const Complex root = S > Scalar(0) ? Complex(sqrt(S), Scalar(0)) : Complex(Scalar(0), sqrt(-S));
    const Complex shifted = root - Scalar(1);
    const Complex potential = Scalar(9) * w * w * w * w / (Scalar(2) * k * k) * shifted * shifted;
    return -hb * hb * w * w / Scalar(2) * S * second - hb * hb * k * k / (Scalar(24) * w * w) * value / S
           + potential * value;
}

/// Characteristic momentum length near p for level n: the Gaussian width,
/// the broken-sector oscillation length and the distance to p*, mapped from y
/// (or ỹ) to p.
double local_momentum_scale(double p, int n, const PhysParams& params);

/// Five-point second difference with step h.
template <typename F, typename Scalar>
auto five_point_second_derivative(F&& f, Scalar p, Scalar h)
{
    return (-f(p + 2 * h) + Scalar(16) * f(p + h) - Scalar(30) * f(p) + Scalar(16) * f(p - h) - f(p - 2 * h))
           / (Scalar(12) * h * h);
}

/// H̃f at p with f'' from a five-point stencil. The default step is
/// 10⁻³·local_momentum_scale(p, 0).
std::complex<double> apply_transformed_hamiltonian(const std::function<std::complex<double>(double)>& f, double p,
                                                   const PhysParams& params, std::optional<double> step = std::nullopt);

struct ResidualOptions {
    double guard_band_fraction = 1e-3;  ///< half-width of the excluded band around p*, in units of p*
    double tail_cutoff = 1e-12;         ///< points with |Φ| below this fraction of max|Φ| are skipped
    double step_fraction = 1e-3;        ///< finite-difference step as a fraction of the local scale
    std::optional<double> energy;       ///< test energy; defaults to the state's own
};

struct ResidualReport {
    int n = 0;
    Sector sector = Sector::Bound;
    double energy = 0.0;
    std::vector<double> grid;  ///< points actually used
    double residual_norm = 0.0;
    double guard_band = 0.0;
    std::size_t grid_size = 0;
};

/// max|H̃Φ − EΦ| / max|EΦ| over the usable part of `grid`, evaluated in
/// extended precision.
ResidualReport residual_norm(const EigenState& state, std::span<const double> grid, const PhysParams& params,
                             const ResidualOptions& options = {});

/// Same residual for a tabulated function on a uniform grid; f'' comes from the
/// five-point stencil with the grid spacing.
ResidualReport residual_norm_tabulated(int n, Sector sector, double energy, std::span<const double> p,
                                       std::span<const std::complex<double>> values, const PhysParams& params,
                                       const ResidualOptions& options = {});

// ---------------------------------------------------------------------------
// Shooting in y

/// Φ'' from Φ'' − Φ'/y + (Ẽ + 3/(4y²) − a(y − 1)²)Φ = 0.
double y_ode_rhs(double y, double phi, double dphi, double E_tilde, double a);

struct ShootingConfig {
    double y_start = 1e-4;          ///< Frobenius matching offset
    std::optional<double> y_max;    ///< default 1 + 12a^{−1/4}
    double ode_rel_tol = 1e-10;
    double bisect_tol = 1e-10;      ///< absolute, in Ẽ/√a
    int max_nodes = 64;
    std::optional<double> search_lo;  ///< Ẽ/√a; default 0
    std::optional<double> search_hi;  ///< Ẽ/√a; default grows from 4(n + 2)
};

struct ShootingResult {
    int n = 0;
    double energy = 0.0;
    double E_tilde = 0.0;
    double lambda = 0.0;  ///< Ẽ/√a
    int nodes_total = 0;       ///< zeros on the whole computational line, including y < 0
    int nodes_positive_y = 0;  ///< zeros in (0, y_max)
    int iterations = 0;
};

/// Locates level n: node counting selects the branch, then bisection on the
/// normalized Wronskian of the outward and inward solutions at y = 1.
///
/// The outward solution starts at y_start from the s = ½ Frobenius series
/// y^{1/2}(c₀ + c₁y + ...). The indicial exponents ½ and 3/2 differ by one, so
/// c₁ is not fixed by the recursion; (c₀, c₁) are taken from the continuation
/// of Φ/√y into y < 0 that decays as y → −∞, which is the condition the
/// closed-form states satisfy.
ShootingResult shoot_bound_state(int n, const ShootingConfig& config, const PhysParams& params);

double shoot_bound_eigenvalue(int n, const ShootingConfig& config, const PhysParams& params);

/// Levels 0..n_max; throws NodeCountError if the result is not strictly increasing.
std::vector<double> numeric_spectrum(int n_max, const ShootingConfig& config, const PhysParams& params);

/// Matched shooting solution at scaled energy Ẽ at the requested y (each in
/// (0, y_max]), scaled so that the entry of largest magnitude is +1.
std::vector<double> shooting_solution(double E_tilde, std::span<const double> ys, const ShootingConfig& config,
                                      const PhysParams& params);

struct NormSplit {
    double left = 0.0;   ///< p ≤ 0
    double right = 0.0;  ///< 0 ≤ p ≤ p*
    double total = 0.0;
};

/// ∫|Φ|²dp of a bound state by composite Gauss–Legendre in y (`panels` panels
/// of 20 nodes on each side of y = 1).
NormSplit quadrature_norm_split(const EigenState& state, const PhysParams& params, int panels = 64);

double quadrature_norm(const EigenState& state, const PhysParams& params, int panels = 64);

}  // namespace lienard
