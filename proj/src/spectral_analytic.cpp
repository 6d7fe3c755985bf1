#include "lienard/spectral_analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lienard {

std::string_view to_string(Sector sector)
{
    return sector == Sector::Bound ? "bound" : "broken";
}

double p_to_y(double p, const PhysParams& params)
{
    validate(params);
    if (p > params.p_star())
        throw DomainError("y is only defined for p <= p*");
    const double s = detail::threshold_fraction(p, params);
    return std::sqrt(std::max(0.0, 1.0 - s));
}

double y_to_p(double y, const PhysParams& params)
{
    validate(params);
    if (!(y >= 0.0))
        throw DomainError("y must be non-negative");
    return params.p_star() * (1.0 - y) * (1.0 + y);
}

double p_to_ytilde(double p, const PhysParams& params)
{
    validate(params);
    if (p < params.p_star())
        throw DomainError("y_tilde is only defined for p >= p*");
    const double s = detail::threshold_fraction(p, params);
    return std::sqrt(std::max(0.0, s - 1.0));
}

double ytilde_to_p(double y_tilde, const PhysParams& params)
{
    validate(params);
    if (!(y_tilde >= 0.0))
        throw DomainError("y_tilde must be non-negative");
    return params.p_star() * (1.0 + y_tilde * y_tilde);
}

SubstitutionFrame substitution_frame(double p, const PhysParams& params)
{
    const auto sc = detail::spectral_scales(params);
    SubstitutionFrame frame;
    frame.p = p;
    const double ps = params.p_star();
    if (p <= ps) {
        frame.y = p_to_y(p, params);
        frame.z = {sc.quart_a * (*frame.y - 1.0), 0.0};
    }
    if (p >= ps) {
        frame.y_tilde = p_to_ytilde(p, params);
        if (p > ps)
            frame.z = sc.quart_a * std::complex<double>(*frame.y_tilde, 1.0);
    }
    return frame;
}

TransformationChain transformation_chain(int n, double y, const PhysParams& params)
{
    if (!(y > 0.0))
        throw SingularityError("transformation chain requires y > 0");
    const auto sc = detail::spectral_scales(params);
    TransformationChain chain;
    chain.z = sc.quart_a * (y - 1.0);
    chain.chi = hermite(n, chain.z);
    chain.phi = chain.chi / std::sqrt(y);
    chain.psi = std::exp(-0.5 * sc.sqrt_a * y * y + sc.sqrt_a * y) * chain.phi;
    return chain;
}

double bound_energy(int n, const PhysParams& params)
{
    validate(params, HarmonicLimit::Allow);
    if (n < 0)
        throw DomainError("level index must be non-negative");
    return (n + 0.5) * params.hbar * params.omega;
}

double broken_energy(int n, const PhysParams& params)
{
    return -bound_energy(n, params);
}

EigenState make_bound_state(int n, const PhysParams& params, double norm)
{
    const auto sc = detail::spectral_scales(params);
    EigenState state;
    state.n = n;
    state.sector = Sector::Bound;
    state.energy = bound_energy(n, params);
    state.norm_constant = norm;
    state.scaled_norm = norm * std::exp(0.5 * sc.sqrt_a);
    state.params = params;
    return state;
}

EigenState normalized_bound_state(int n, const PhysParams& params)
{
    const NormalizationResult norm = normalize_bound(n, params);
    EigenState state;
    state.n = n;
    state.sector = Sector::Bound;
    state.energy = bound_energy(n, params);
    state.norm_constant = norm.numeric_value;
    state.scaled_norm = norm.scaled_norm;
    state.params = params;
    return state;
}

double broken_reference_norm(int n, const PhysParams& params)
{
    const auto sc = detail::spectral_scales(params);
    const double yt_max = (std::sqrt(2.0 * n + 1.0) + 8.0) / sc.quart_a;
    constexpr int samples = 4000;
    double peak = 0.0;
    for (int i = 1; i <= samples; ++i) {
        const double yt = yt_max * static_cast<double>(i) / samples;
        peak = std::max(peak, std::abs(broken_wavefunction(n, ytilde_to_p(yt, params), params, 1.0)));
    }
    if (!(peak > 0.0) || !std::isfinite(peak))
        throw ZeroAmplitudeError("broken eigenfunction has no finite peak on the reference grid");
    return 1.0 / peak;
}

EigenState make_broken_state(int n, const PhysParams& params, std::optional<double> norm)
{
    EigenState state;
    state.n = n;
    state.sector = Sector::Broken;
    state.energy = broken_energy(n, params);
    state.norm_constant = norm ? *norm : broken_reference_norm(n, params);
    state.scaled_norm = state.norm_constant;
    state.params = params;
    return state;
}

namespace {

// ∫ (1 + z/q)² e^{−z²} H_n(z)² dz over [lo, hi]; the reduced density of |Φ|²dp
// up to the factor 3ω²/(kq) and the constant e^{√a}.
double reduced_density_integral(int n, double q, double lo, double hi, double tol)
{
    if (!(hi > lo))
        return 0.0;
    const auto f = [n, q](double z) {
        const double y = 1.0 + z / q;
        const double h = hermite(n, z);
        return y * y * std::exp(-z * z) * h * h;
    };
    double error = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, tol, &error, &l1);
    if (!(error <= 1e-10 * std::max(l1, 1e-300)))
        throw QuadratureError("normalization quadrature did not converge");
    return value;
}

}  // namespace

NormalizationResult normalize_bound(int n, const PhysParams& params, const NormalizationOptions& options)
{
    if (n < 0 || n > options.max_level)
        throw DomainError("normalization level outside [0, max_level]");
    const auto sc = detail::spectral_scales(params);
    const double q = sc.quart_a;
    const double z_cut = std::sqrt(2.0 * n + 1.0) + 12.0;
    const double jacobian = 3.0 * params.omega * params.omega / (params.k * q);

    // p ≤ 0 ↔ y ≥ 1 ↔ z ≥ 0; 0 ≤ p ≤ p* ↔ z ∈ [−q, 0]
    const double left = jacobian * reduced_density_integral(n, q, 0.0, z_cut, options.tolerance);
    const double right = jacobian * reduced_density_integral(n, q, std::max(-q, -z_cut), 0.0, options.tolerance);
    const double total = left + right;
    if (!(total > 0.0) || !std::isfinite(total))
        throw QuadratureError("normalization integral is not positive and finite");

    NormalizationResult result;
    result.n = n;
    result.scaled_norm = 1.0 / std::sqrt(total);
    result.log_numeric_value = -0.5 * std::log(total) - 0.5 * sc.sqrt_a;
    result.numeric_value = std::exp(result.log_numeric_value);
    result.left_integral = std::exp(sc.sqrt_a) * left;
    result.g_a = std::exp(sc.sqrt_a) * right;
    result.closed_form_value = closed_form_norm_constant(n, params, result.g_a);
    return result;
}

double closed_form_norm_constant(int n, const PhysParams& params, double g_a)
{
    const auto sc = detail::spectral_scales(params);
    const double hw = params.hbar * params.omega;
    const double bracket =
        std::pow(2.0, n - 1) * std::sqrt(std::numbers::pi) * std::tgamma(n + 1.0) * (1.0 + sc.sqrt_a) + g_a;
    const double denom = std::sqrt(hw) * bracket;
    if (!(denom > 0.0))
        throw DomainError("closed-form normalization has a negative radicand");
    return std::sqrt(std::exp(-sc.sqrt_a) / denom);
}

}  // namespace lienard
