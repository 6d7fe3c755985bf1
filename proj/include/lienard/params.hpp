#pragma once

#include "lienard/errors.hpp"

#include <cmath>
#include <string>

namespace lienard {

/// Physical constants shared by every layer of the model.
///
/// `k` is the nonlinearity strength, `omega` the angular frequency and `hbar`
/// the reduced Planck constant. Units are whatever coherent system the caller
/// uses; nothing is enforced beyond positivity.
struct PhysParams {
    double k = 1.0;
    double omega = 1.0;
    double hbar = 1.0;

    /// Momentum threshold 3ω²/(2k) where the mass profile diverges.
    double p_star() const { return 3.0 * omega * omega / (2.0 * k); }

    /// Amplitude bound 3ω/k separating regular from singular orbits.
    double regular_amplitude_bound() const { return 3.0 * omega / k; }

    /// Energy ½(3ω/k)²ω² of the orbit sitting on the regular bound.
    double critical_energy() const { return 4.5 * omega * omega * omega * omega / (k * k); }
};

enum class HarmonicLimit { Reject, Allow };

/// Throws unless ω > 0, ħ > 0 and k > 0 (k = 0 admitted with HarmonicLimit::Allow).
inline void validate(const PhysParams& params, HarmonicLimit limit = HarmonicLimit::Reject)
{
    if (!(std::isfinite(params.omega) && params.omega > 0.0))
        throw DegenerateParameterError("omega must be finite and positive");
    if (!(std::isfinite(params.hbar) && params.hbar > 0.0))
        throw DegenerateParameterError("hbar must be finite and positive");
    if (!std::isfinite(params.k) || params.k < 0.0)
        throw DegenerateParameterError("k must be finite and non-negative");
    if (params.k == 0.0 && limit == HarmonicLimit::Reject)
        throw DegenerateParameterError("k = 0 is only meaningful through the harmonic-limit maps");
}

}  // namespace lienard
