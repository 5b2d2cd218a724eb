#include "surfqbm/spectral.hpp"

#include <cmath>
#include <numbers>

#include "surfqbm/constants.hpp"
#include "surfqbm/diagnostics.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/greens.hpp"

namespace surfqbm {

namespace {
constexpr double pi = std::numbers::pi;
using constants::c;
using constants::hbar;

double prefactor(double omega) { return omega * omega / (2.0 * pi * constants::eps0 * c * c); }
}  // namespace

QuadSpec spectral_quad_spec() {
  QuadSpec s;
  s.rel_tol = 1e-12;
  return s;
}

double alpha_pair_squared(const ScenarioConfig& cfg, double omega) {
  const auto a0 = cfg.alpha(Frequency::real(cfg.omega0()));
  const auto a = cfg.alpha(Frequency::real(omega));
  return std::norm(a0 + a);
}

double gamma0(const ScenarioConfig& cfg, double omega) {
  const double e = cfg.profile().amplitude_max;
  return alpha_pair_squared(cfg, omega) * e * e * omega * omega * omega /
         (12.0 * pi * constants::eps0 * hbar * c * c * c);
}

double g_factor(const ScenarioConfig& cfg, double z, double omega, SpectralPart part,
                FieldPolicy policy, const QuadSpec& spec) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  if (!(omega > 0.0)) throw DomainError("frequency must be > 0");
  const double e = field_amplitude_at(cfg, z, policy);
  const double de = field_derivative_at(cfg, z, policy);
  double g = 0.0;
  if (part != SpectralPart::scattering) {
    // Cross terms vanish: Im G_free is even in z1 - z2.
    g += e * e * recoil_free(omega) + de * de * greens_free_im_diag(omega).xx.imag();
  }
  if (part != SpectralPart::free) {
    const Frequency f = Frequency::real(omega);
    if (e != 0.0) {
      g += e * e * greens_scattering_component(cfg.surface, z, f, GreensComponent::xx_recoil,
                                               GreensPart::imag, spec);
    }
    if (de != 0.0) {
      g += de * de * greens_scattering_component(cfg.surface, z, f, GreensComponent::xx,
                                                 GreensPart::imag, spec);
      if (e != 0.0) {
        g += 2.0 * e * de * greens_scattering_component(cfg.surface, z, f, GreensComponent::xx_dz1,
                                                        GreensPart::imag, spec);
      }
    }
  }
  return g;
}

double spectral_density(const ScenarioConfig& cfg, double z, double omega, SpectralMode mode,
                        SpectralPart part, const QuadSpec& spec) {
  if (!(omega > 0.0)) throw DomainError("frequency must be > 0");
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  switch (mode) {
    case SpectralMode::full:
      return prefactor(omega) * alpha_pair_squared(cfg, omega) *
             g_factor(cfg, z, omega, part, FieldPolicy::standing_wave, spec);
    case SpectralMode::approx:
      return prefactor(omega) * alpha_pair_squared(cfg, omega) *
             g_factor(cfg, z, omega, part, FieldPolicy::at_antinode, spec);
    case SpectralMode::closed_form_free:
    case SpectralMode::closed_form_pc_nearfield:
    case SpectralMode::closed_form_metal_nearfield:
      break;
  }
  const double jfree = 2.0 * hbar * omega * omega * gamma0(cfg, omega) / (5.0 * pi * c * c);
  double jsc = 0.0;
  if (mode == SpectralMode::closed_form_pc_nearfield) {
    if (!cfg.surface.is_perfect_conductor()) {
      throw ModelError("closed_form_pc_nearfield requires a perfect-conductor surface");
    }
    jsc = jfree;
  } else if (mode == SpectralMode::closed_form_metal_nearfield) {
    if (cfg.surface.is_perfect_conductor()) {
      throw ModelError("closed_form_metal_nearfield requires a finite-permittivity surface");
    }
    const auto eps = cfg.surface.permittivity(Frequency::real(omega));
    const double t = omega * z / c;
    jsc = 9.0 * hbar * omega * omega / (16.0 * pi * c * c * std::pow(t, 5)) *
          ((eps - 1.0) / (eps + 1.0)).imag() * gamma0(cfg, omega);
  }
  switch (part) {
    case SpectralPart::free:
      return jfree;
    case SpectralPart::scattering:
      return jsc;
    case SpectralPart::total:
      return jfree + jsc;
  }
  return 0.0;
}

double coth_factor(double omega, double temperature, CothConvention convention) {
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 1.0;
  if (!(omega > 0.0)) throw DomainError("coth factor needs omega > 0");
  double x = hbar * omega / (constants::kB * temperature);
  if (convention == CothConvention::half) x *= 0.5;
  if (x > 40.0) return 1.0;
  return 1.0 / std::tanh(x);
}

CoefficientPair sideband_coefficients(const Spectrum& J, double omega0, double Omega,
                                      double temperature, double mass, CothConvention convention) {
  if (!(Omega > 0.0)) throw DomainError("trap frequency must be > 0");
  if (!(omega0 > Omega)) throw DomainError("sidebands need omega0 > Omega");
  if (!(mass > 0.0)) throw DomainError("mass must be > 0");
  const double wp = omega0 + Omega;
  const double wm = omega0 - Omega;
  const double jp = J(wp);
  const double jm = J(wm);
  CoefficientPair out;
  out.gamma = pi / (4.0 * mass * Omega) * (jp - jm);
  out.lambda = pi / (4.0 * hbar) *
               (jp * coth_factor(wp, temperature, convention) + jm * coth_factor(wm, temperature, convention));
  return out;
}

CoefficientPair approx_coefficients(const Spectrum& J, double omega0, double mass, double rel_step) {
  if (!(omega0 > 0.0)) throw DomainError("omega0 must be > 0");
  if (!(mass > 0.0)) throw DomainError("mass must be > 0");
  const double h = rel_step * omega0;
  const double jp = J(omega0 + h);
  const double jm = J(omega0 - h);
  CoefficientPair out;
  out.gamma = pi / (2.0 * mass) * (jp - jm) / (2.0 * h);
  out.lambda = pi / (2.0 * hbar) * J(omega0);
  return out;
}

CoefficientPair coefficients_sideband(const ScenarioConfig& cfg, double z, SpectralMode mode,
                                      std::optional<double> Omega, const QuadSpec& spec) {
  const double big_omega = Omega.value_or(cfg.trap_frequency);
  auto J = [&](double w) { return spectral_density(cfg, z, w, mode, SpectralPart::total, spec); };
  return sideband_coefficients(J, cfg.omega0(), big_omega, cfg.temperature, cfg.mass(), cfg.coth);
}

CoefficientPair coefficients_approx(const ScenarioConfig& cfg, double z, SpectralMode mode,
                                    const QuadSpec& spec) {
  const double w0 = cfg.omega0();
  if (cfg.trap_frequency > 1e-2 * w0) {
    warn("coefficients_approx: Omega/omega0 = " + std::to_string(cfg.trap_frequency / w0) +
         " is not small");
  }
  if (constants::kB * cfg.temperature > 0.1 * hbar * w0) {
    warn("coefficients_approx: kB T is not small against hbar omega0");
  }
  auto J = [&](double w) { return spectral_density(cfg, z, w, mode, SpectralPart::total, spec); };
  return approx_coefficients(J, w0, cfg.mass());
}

double lambda_free_closed_form(const ScenarioConfig& cfg) {
  const double w0 = cfg.omega0();
  return w0 * w0 * gamma0(cfg, w0) / (5.0 * c * c);
}

double lambda_pc_nearfield_closed_form(const ScenarioConfig& cfg) {
  return 2.0 * lambda_free_closed_form(cfg);
}

MetalNearField lambda_metal_nearfield(const ScenarioConfig& cfg, double z) {
  if (cfg.surface.is_perfect_conductor()) {
    throw ModelError("metal near-field decoherence needs a finite-permittivity surface");
  }
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  const double w0 = cfg.omega0();
  const double k = cfg.k0();
  const double t = cfg.z_tilde(z);
  const auto eps = cfg.surface.permittivity(Frequency::real(w0));
  MetalNearField out;
  out.lambda = 9.0 * k * k / (32.0 * std::pow(t, 5)) * ((eps - 1.0) / (eps + 1.0)).imag() *
               gamma0(cfg, w0);
  out.gamma_sc = gamma_scatter(cfg, z, ScatterMethod::nearfield, FieldPolicy::at_antinode);
  return out;
}

}  // namespace surfqbm
