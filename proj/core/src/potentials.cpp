#include "surfqbm/potentials.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/greens.hpp"
#include "surfqbm/spectral.hpp"

namespace surfqbm {

namespace {
constexpr double pi = std::numbers::pi;
}

QuadSpec potential_quad_spec() {
  QuadSpec s;
  s.rel_tol = 1e-12;
  return s;
}

double field_amplitude_at(const ScenarioConfig& cfg, double z, FieldPolicy policy) {
  const auto prof = cfg.profile();
  return policy == FieldPolicy::at_antinode ? prof.amplitude_max : prof.amplitude(z);
}

double field_derivative_at(const ScenarioConfig& cfg, double z, FieldPolicy policy) {
  return policy == FieldPolicy::at_antinode ? 0.0 : cfg.profile().derivative(z);
}

double u_trap(const ScenarioConfig& cfg, double z) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  const double e = cfg.profile().amplitude(z);
  return -0.25 * cfg.alpha_real(cfg.omega0()) * e * e;
}

double u_cp(const ScenarioConfig& cfg, double z, const QuadSpec& spec) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  const auto& surf = cfg.surface;
  if (!surf.is_perfect_conductor() && std::holds_alternative<Vacuum>(surf.model())) return 0.0;

  auto vac = [&](double xi) {
    const double a = polarizability(cfg.particle, Frequency::imaginary(xi)).real();
    if (a == 0.0) return 0.0;
    const double tr = greens_scattering_component(surf, z, Frequency::imaginary(xi),
                                                  GreensComponent::trace, GreensPart::real, spec);
    return xi * xi * a * tr;
  };
  const double scale = constants::c / (2.0 * z);
  const double term1 = constants::hbar * constants::mu0 / (2.0 * pi) *
                       integrate_matsubara_like(RealFn(vac), spec, scale).value;
  if (cfg.temperature == 0.0) return term1;

  auto thermal = [&](double w) {
    const double n = thermal_occupancy(w, cfg.temperature);
    if (n == 0.0) return 0.0;
    const double a = cfg.alpha(Frequency::real(w)).real();
    const double tr = greens_scattering_component(surf, z, Frequency::real(w),
                                                  GreensComponent::trace, GreensPart::imag, spec);
    return w * w * n * a * tr;
  };
  QuadSpec st = spec;
  st.tail_scale = constants::kB * cfg.temperature / constants::hbar;
  if (const auto* dl = std::get_if<DrudeLorentz>(&cfg.particle.permittivity)) {
    for (const auto& o : dl->oscillators) st.split_points.push_back(o.resonance);
  }
  // The thermal term is small against term1 near a surface; do not chase it
  // below the vacuum term's own accuracy.
  st.abs_tol = std::max(st.abs_tol, spec.rel_tol * std::abs(term1) * pi /
                                        (constants::hbar * constants::mu0));
  const double term2 = -constants::hbar * constants::mu0 / pi *
                       integrate_adaptive(RealFn(thermal), 0.0, INFINITY, st).value;
  return term1 + term2;
}

double u_dcp(const ScenarioConfig& cfg, double z, const QuadSpec& spec) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  const double e = cfg.profile().amplitude(z);
  if (e == 0.0) return 0.0;
  const double w0 = cfg.omega0();
  const double a = cfg.alpha_real(w0);
  const double n = thermal_occupancy(w0, cfg.temperature);
  const double re_g = greens_scattering_component(cfg.surface, z, Frequency::real(w0),
                                                  GreensComponent::xx, GreensPart::real, spec);
  return -0.5 * constants::mu0 * w0 * w0 * a * a * (2.0 * n + 1.0) * e * e * re_g;
}

PotentialBreakdown potential_breakdown(const ScenarioConfig& cfg, double z, const QuadSpec& spec) {
  PotentialBreakdown b;
  b.z = z;
  b.u_trap = u_trap(cfg, z);
  b.u_cp = u_cp(cfg, z, spec);
  b.u_dcp = u_dcp(cfg, z, spec);
  b.u_total = b.u_trap + b.u_cp + b.u_dcp;
  return b;
}

double gamma_scatter(const ScenarioConfig& cfg, double z, ScatterMethod method, FieldPolicy policy,
                     const QuadSpec& spec) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  const double w0 = cfg.omega0();
  const double e = field_amplitude_at(cfg, z, policy);
  if (method == ScatterMethod::nearfield) {
    if (cfg.surface.is_perfect_conductor()) {
      throw ModelError("near-field scattering rate needs a finite-permittivity surface");
    }
    const auto eps = cfg.surface.permittivity(Frequency::real(w0));
    const double t = cfg.z_tilde(z);
    // gamma_0 with the field actually used here.
    const double g0 = alpha_pair_squared(cfg, w0) * e * e * std::pow(w0 / constants::c, 3) /
                      (12.0 * pi * constants::eps0 * constants::hbar);
    return 3.0 / (8.0 * t * t * t) * ((eps - 1.0) / (eps + 1.0)).imag() * g0;
  }
  const double a = cfg.alpha_real(w0);
  const double n = thermal_occupancy(w0, cfg.temperature);
  const double im_g = greens_scattering_component(cfg.surface, z, Frequency::real(w0),
                                                  GreensComponent::xx, GreensPart::imag, spec);
  return constants::mu0 * w0 * w0 * a * a / constants::hbar * (2.0 * n + 1.0) * e * e * im_g;
}

namespace {
double step_for(double z) { return std::max(1e-4 * z, 1e-12); }
}  // namespace

double derivative(const std::function<double(double)>& f, double z, double h) {
  if (!(h > 0.0)) h = step_for(z);
  auto d = [&](double s) { return (f(z + s) - f(z - s)) / (2.0 * s); };
  const double d1 = d(h);
  const double d2 = d(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

double second_derivative(const std::function<double(double)>& f, double z, double h) {
  if (!(h > 0.0)) h = step_for(z);
  const double f0 = f(z);
  auto d = [&](double s) { return (f(z + s) - 2.0 * f0 + f(z - s)) / (s * s); };
  const double d1 = d(h);
  const double d2 = d(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

std::pair<double, double> default_bracket(const ScenarioConfig& cfg) {
  const double lambda = cfg.drive.wavelength;
  double zp = cfg.profile().z_peak();
  // First antinode in front of the surface.
  const double half = 0.5 * lambda;
  while (zp <= 0.0) zp += half;
  while (zp > half) zp -= half;
  return {std::max(zp - 0.2 * lambda, 1e-3 * lambda), zp + 0.2 * lambda};
}

TrapSummary find_equilibrium(const ScenarioConfig& cfg, std::pair<double, double> bracket,
                             PotentialTerms terms, const QuadSpec& spec) {
  auto [a, b] = bracket;
  if (!(a > 0.0) || !(b > a)) throw DomainError("equilibrium bracket must satisfy 0 < a < b");
  auto total = [&](double z) {
    double u = u_trap(cfg, z);
    if (terms.cp) u += u_cp(cfg, z, spec);
    if (terms.dcp) u += u_dcp(cfg, z, spec);
    return u;
  };
  auto slope = [&](double z) { return derivative(total, z); };
  double fa = slope(a);
  double fb = slope(b);
  if (!(fa < 0.0 && fb > 0.0)) {
    // Near the surface the CP slope can beat the trap slope, adding a
    // maximum-type root. Scan for the minimum-type crossing nearest the
    // antinode.
    constexpr int n = 48;
    const double mid = cfg.profile().z_peak();
    double best = INFINITY;
    double x0 = a, f0 = fa;
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double x1 = a + (b - a) * i / n;
      const double f1 = i == n ? fb : slope(x1);
      if (f0 < 0.0 && f1 > 0.0) {
        const double d = std::abs(0.5 * (x0 + x1) - mid);
        if (d < best) {
          best = d;
          lo = x0, hi = x1, flo = f0, fhi = f1;
        }
      }
      x0 = x1, f0 = f1;
    }
    if (!std::isfinite(best)) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "trap lost: dU/dz has no minimum-type sign change in [%.4g, %.4g] m", a, b);
      throw ModelError(msg);
    }
    a = lo, b = hi, fa = flo, fb = fhi;
  }
  std::uintmax_t iters = 200;
  auto tol = [](double x, double y) { return std::abs(y - x) <= 1e-12; };
  auto root = boost::math::tools::toms748_solve(slope, a, b, fa, fb, tol, iters);
  TrapSummary s;
  s.z0 = 0.5 * (root.first + root.second);

  const double w0 = cfg.omega0();
  const double e = cfg.profile().amplitude(s.z0);
  const double k = cfg.k0();
  const double m = cfg.mass();
  s.omega_tr = std::sqrt(cfg.alpha_real(w0) * k * k * e * e / (2.0 * m));
  if (terms.cp) {
    s.omega_cp_sq = second_derivative([&](double z) { return u_cp(cfg, z, spec); }, s.z0) / m;
  }
  if (terms.dcp) {
    s.omega_dcp_sq = second_derivative([&](double z) { return u_dcp(cfg, z, spec); }, s.z0) / m;
  }
  auto signed_root = [](double sq) { return std::copysign(std::sqrt(std::abs(sq)), sq); };
  s.omega_cp = signed_root(s.omega_cp_sq);
  s.omega_dcp = signed_root(s.omega_dcp_sq);
  const double sum = s.omega_tr * s.omega_tr + s.omega_cp_sq + s.omega_dcp_sq;
  s.stable = sum > 0.0;
  s.omega_total = s.stable ? std::sqrt(sum) : 0.0;
  return s;
}

TrapSummary find_equilibrium(const ScenarioConfig& cfg, PotentialTerms terms) {
  return find_equilibrium(cfg, default_bracket(cfg), terms, potential_quad_spec());
}

}  // namespace surfqbm
