#include "lienard/semiclassical.hpp"

#include "lienard/errors.hpp"
#include "lienard/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace lienard {

namespace {

const quadrature::GaussLegendre<double>& action_rule()
{
    static const quadrature::GaussLegendre<double> rule(128);
    return rule;
}

void check_regular(double A, const PhysParams& params)
{
    validate(params, HarmonicLimit::Allow);
    if (!(A >= 0.0))
        throw DomainError("amplitude must be non-negative");
    if (params.k > 0.0 && !(A < params.regular_amplitude_bound()))
        throw RegularityError("action integral is only defined for regular orbits A < 3 omega/k");
}

}  // namespace

double action_integrand(double phi, double A, const PhysParams& params)
{
    check_regular(A, params);
    const double c = params.k * A / (3.0 * params.omega);
    const double cs = std::cos(phi);
    const double denom = 1.0 - c * cs;
    return (cs - 0.5 * c * cs * cs) * (cs - c) / (denom * denom);
}

double action_integral(double A, const PhysParams& params)
{
    check_regular(A, params);
    if (A == 0.0)
        return 0.0;
    const double integral = action_rule().integrate(
        [&](double phi) { return action_integrand(phi, A, params); }, 0.0, 2.0 * std::numbers::pi);
    return params.omega * A * A * integral;
}

double quantized_amplitude(int n, const PhysParams& params)
{
    validate(params, HarmonicLimit::Allow);
    if (n < 0)
        throw DomainError("quantum number must be non-negative");
    return std::sqrt(2.0 * (n + 0.5) * params.hbar / params.omega);
}

int regular_level_count(const PhysParams& params)
{
    validate(params);
    const double w = params.omega;
    const double bound = params.regular_amplitude_bound();
    const double x = 9.0 * w * w * w / (2.0 * params.hbar * params.k * params.k);
    int n = static_cast<int>(std::ceil(x - 0.5)) - 1;
    // settle rounding at the boundary against the defining strict inequality
    while (n >= 0 && !(quantized_amplitude(n, params) < bound))
        --n;
    while (quantized_amplitude(n + 1, params) < bound)
        ++n;
    return n;
}

std::vector<SemiclassicalLevel> semiclassical_spectrum(const PhysParams& params)
{
    const int top = regular_level_count(params);
    std::vector<SemiclassicalLevel> levels;
    levels.reserve(static_cast<std::size_t>(top + 1));
    for (int n = 0; n <= top; ++n)
        levels.push_back({n, quantized_amplitude(n, params), (n + 0.5) * params.hbar * params.omega});
    return levels;
}

}  // namespace lienard
