#pragma once

#include <functional>
#include <optional>

#include "surfqbm/config.hpp"
#include "surfqbm/potentials.hpp"
#include "surfqbm/quadrature.hpp"

namespace surfqbm {

enum class SpectralMode {
  full,                         // standing-wave field and its gradient, all four g terms
  approx,                       // field at an antinode, recoil term only
  closed_form_free,             // free space only
  closed_form_pc_nearfield,     // perfect conductor, kz << 1
  closed_form_metal_nearfield,  // finite-eps metal, kz << 1
};

enum class SpectralPart { free, scattering, total };

// Units: J(omega) in J/m^2 (= kg/s^2), so that pi J / (2 hbar) is in Hz/m^2
// and pi J / (2 M Omega) is in 1/s.
QuadSpec spectral_quad_spec();

// gamma_0(w) = (alpha(w0) + alpha(w))^2 E_max^2 w^3 / (12 pi eps0 hbar c^3)
double gamma0(const ScenarioConfig& cfg, double omega);

// (alpha(w0) + alpha(w))^2, |.|^2 in complex polarizability mode.
double alpha_pair_squared(const ScenarioConfig& cfg, double omega);

// Sum of the recoil, field-gradient and two cross contractions, V^2/m^5.
double g_factor(const ScenarioConfig& cfg, double z, double omega, SpectralPart part,
                FieldPolicy policy = FieldPolicy::standing_wave,
                const QuadSpec& spec = spectral_quad_spec());

double spectral_density(const ScenarioConfig& cfg, double z, double omega, SpectralMode mode,
                        SpectralPart part = SpectralPart::total,
                        const QuadSpec& spec = spectral_quad_spec());

struct CoefficientPair {
  double gamma = 0.0;   // 1/s
  double lambda = 0.0;  // Hz/m^2
};

using Spectrum = std::function<double(double)>;

// coth(hbar w / 2 kB T) (half) or coth(hbar w / kB T) (literal); 1 at T = 0.
double coth_factor(double omega, double temperature, CothConvention convention);

// Gamma = (pi / 4 M Omega)[J(w0+O) - J(w0-O)]
// Lambda = (pi / 4 hbar)[J(w0+O) coth_+ + J(w0-O) coth_-]
CoefficientPair sideband_coefficients(const Spectrum& J, double omega0, double Omega,
                                      double temperature, double mass,
                                      CothConvention convention = CothConvention::half);
// Gamma = (pi / 2M) J'(w0), Lambda = (pi / 2 hbar) J(w0); J' by central
// difference with step rel_step * w0.
CoefficientPair approx_coefficients(const Spectrum& J, double omega0, double mass,
                                    double rel_step = 1e-6);

CoefficientPair coefficients_sideband(const ScenarioConfig& cfg, double z,
                                      SpectralMode mode = SpectralMode::approx,
                                      std::optional<double> Omega = std::nullopt,
                                      const QuadSpec& spec = spectral_quad_spec());
CoefficientPair coefficients_approx(const ScenarioConfig& cfg, double z,
                                    SpectralMode mode = SpectralMode::approx,
                                    const QuadSpec& spec = spectral_quad_spec());

double lambda_free_closed_form(const ScenarioConfig& cfg);
double lambda_pc_nearfield_closed_form(const ScenarioConfig& cfg);

struct MetalNearField {
  double lambda = 0.0;    // Hz/m^2, 9 k0^2 / (32 (k0 z)^5) Im[(eps-1)/(eps+1)] gamma_0(w0)
  double gamma_sc = 0.0;  // 1/s, near-field scattering rate; lambda = 3 gamma_sc / (4 z^2)
};
MetalNearField lambda_metal_nearfield(const ScenarioConfig& cfg, double z);

}  // namespace surfqbm
