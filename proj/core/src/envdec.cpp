#include "surfqbm/envdec.hpp"

#include <cmath>
#include <numbers>

#include "surfqbm/constants.hpp"
#include "surfqbm/diagnostics.hpp"
#include "surfqbm/error.hpp"

namespace surfqbm {

namespace {
constexpr double pi = std::numbers::pi;
}

double lambda_gas(const GasSpec& gas, const ParticleSpec& particle) {
  if (gas.pressure < 0.0) throw DomainError("gas pressure must be >= 0");
  if (!(gas.molecule_mass > 0.0)) throw DomainError("gas molecule mass must be > 0");
  if (!(gas.temperature > 0.0)) throw DomainError("gas temperature must be > 0");
  if (!(particle.radius > 0.0)) throw DomainError("particle radius must be > 0");
  const double hbar = constants::hbar;
  return 8.0 / (3.0 * hbar * hbar) * gas.pressure * std::sqrt(2.0 * pi * gas.molecule_mass) *
         particle.radius * particle.radius * std::sqrt(constants::kB * gas.temperature);
}

double blackbody_peak_frequency(double temperature) {
  return 2.0 * pi * constants::c * temperature / constants::wien_b;
}

double lambda_blackbody_fixed_alpha(double temperature, double alpha) {
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  double fact8 = 1.0;
  for (int i = 2; i <= 8; ++i) fact8 *= i;
  const double a = alpha / (pi * constants::eps0);
  const double x = constants::kB * temperature / (constants::hbar * constants::c);
  return fact8 * constants::c / (18.0 * pi) * a * a * std::pow(x, 9) * constants::zeta9;
}

double lambda_blackbody(double temperature, const ParticleSpec& particle) {
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const auto alpha = polarizability(particle, Frequency::real(blackbody_peak_frequency(temperature)),
                                    PolarizabilityMode::complex);
  double a = alpha.real();
  if (std::abs(alpha.imag()) > std::abs(alpha.real())) {
    warn("lambda_blackbody: thermal peak frequency is on a material resonance; using |alpha|");
    a = std::abs(alpha);
  }
  return lambda_blackbody_fixed_alpha(temperature, a);
}

}  // namespace surfqbm
