#pragma once

// Modified Bohr–Sommerfeld quantization of the regular periodic orbits.

#include "lienard/params.hpp"

#include <vector>

namespace lienard {

struct SemiclassicalLevel {
    int n = 0;
    double A_n = 0.0;
    double E_n = 0.0;
};

/// [(cos φ − (kA/6ω)cos²φ)(cos φ − kA/3ω)] / (1 − (kA/3ω)cos φ)².
/// Throws RegularityError for A ≥ 3ω/k.
double action_integrand(double phi, double A, const PhysParams& params);

/// ∮p dx = ωA²∫₀^{2π} action_integrand dφ with 128-node Gauss–Legendre.
double action_integral(double A, const PhysParams& params);

/// A_n = √(2(n + ½)ħ/ω).
double quantized_amplitude(int n, const PhysParams& params);

/// Largest n whose amplitude stays strictly below 3ω/k, i.e.
/// ⌈9ω³/(2ħk²) − ½⌉ − 1. Returns −1 when even n = 0 is not regular.
int regular_level_count(const PhysParams& params);

/// Levels n = 0..N with E_n = (n + ½)ħω.
std::vector<SemiclassicalLevel> semiclassical_spectrum(const PhysParams& params);

}  // namespace lienard
