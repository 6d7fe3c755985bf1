#include "lienard/core_model.hpp"

#include <cmath>

namespace lienard {

ScaledSpectralParams scaled_params(double energy, const PhysParams& params)
{
    validate(params);
    const double k = params.k;
    const double w = params.omega;
    const double hb = params.hbar;
    ScaledSpectralParams out;
    out.E_tilde = 18.0 * w * w * energy / (hb * hb * k * k);
    // √a = 9ω³/(ħk²) is formed directly so that a and √a agree to the last bit
    out.sqrt_a = 9.0 * w * w * w / (hb * k * k);
    out.a = out.sqrt_a * out.sqrt_a;
    return out;
}

double unscale_energy(double E_tilde, const PhysParams& params)
{
    validate(params);
    const double k = params.k;
    const double hb = params.hbar;
    return E_tilde * hb * hb * k * k / (18.0 * params.omega * params.omega);
}

}  // namespace lienard
