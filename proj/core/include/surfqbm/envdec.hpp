#pragma once

#include "surfqbm/config.hpp"
#include "surfqbm/materials.hpp"

namespace surfqbm {

// Background-gas localization rate,
// (8 / 3 hbar^2) P sqrt(2 pi m_gas) R^2 sqrt(kB T), Hz/m^2.
double lambda_gas(const GasSpec& gas, const ParticleSpec& particle);

// Blackbody-scattering localization rate,
// (8! c / 18 pi) [alpha(w_th) / pi eps0]^2 (kB T / hbar c)^9 zeta(9), with
// w_th = 2 pi c T / b. alpha(w_th) is the real part unless w_th sits on a
// resonance (|Im alpha| > |Re alpha|), where |alpha| is used with a warning.
double lambda_blackbody(double temperature, const ParticleSpec& particle);
// Same, with a fixed polarizability (for scaling checks).
double lambda_blackbody_fixed_alpha(double temperature, double alpha);

// Peak blackbody frequency 2 pi c T / b, rad/s.
double blackbody_peak_frequency(double temperature);

}  // namespace surfqbm
