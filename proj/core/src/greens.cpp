#include "surfqbm/greens.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"

namespace surfqbm {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

cd branch_sqrt(cd x) {
  cd s = std::sqrt(x);
  if (s.real() < 0.0) s = -s;
  if (s.real() == 0.0 && s.imag() > 0.0) s = -s;
  return s;
}

struct Reflector {
  bool perfect = false;
  cd eps{1.0, 0.0};

  FresnelPair operator()(cd kappa, double k2) const {
    if (perfect) return {cd(1.0, 0.0), cd(-1.0, 0.0)};
    return fresnel(eps, kappa, k2);
  }
};

Reflector make_reflector(const SurfaceModel& surface, Frequency freq) {
  Reflector r;
  r.perfect = surface.is_perfect_conductor();
  if (!r.perfect) r.eps = surface.permittivity(freq);
  return r;
}

cd integrand(GreensComponent c, cd kappa, double k2, double z, const FresnelPair& r) {
  const cd e = std::exp(-2.0 * kappa * z);
  const cd xx = r.rp * kappa * kappa / k2 + r.rs;
  switch (c) {
    case GreensComponent::xx:
      return e * xx;
    case GreensComponent::zz:
      return e * 2.0 * r.rp * (kappa * kappa + k2) / k2;
    case GreensComponent::trace:
      return e * (2.0 * xx + 2.0 * r.rp * (kappa * kappa + k2) / k2);
    case GreensComponent::xx_dz1:
      return -kappa * e * xx;
    case GreensComponent::xx_recoil:
      return kappa * kappa * e * xx;
  }
  return {};
}

double pick(cd v, GreensPart part) { return part == GreensPart::real ? v.real() : v.imag(); }

}  // namespace

FresnelPair fresnel(cd eps, cd kappa, double k2) {
  const cd km = branch_sqrt(kappa * kappa - (eps - 1.0) * k2);
  return {(eps * kappa - km) / (eps * kappa + km), (kappa - km) / (kappa + km)};
}

FresnelPair fresnel(const SurfaceModel& surface, cd kappa, Frequency freq) {
  return make_reflector(surface, freq)(kappa, freq.k_squared());
}

FresnelPair fresnel_nearfield(cd eps, cd kappa, double k2) {
  const cd ratio = k2 / (kappa * kappa);
  const cd lead = (eps - 1.0) / (eps + 1.0);
  return {lead + eps * (eps - 1.0) / ((eps + 1.0) * (eps + 1.0)) * ratio, 0.25 * (eps - 1.0) * ratio};
}

FresnelPair fresnel_nearfield(const SurfaceModel& surface, cd kappa, Frequency freq) {
  if (surface.is_perfect_conductor()) return {cd(1.0, 0.0), cd(-1.0, 0.0)};
  return fresnel_nearfield(surface.permittivity(freq), kappa, freq.k_squared());
}

GreensDiag greens_free_im_diag(double omega) {
  const cd v(0.0, omega / (6.0 * pi * constants::c));
  return {v, v, v};
}

double greens_scattering_component(const SurfaceModel& surface, double z, Frequency freq,
                                   GreensComponent component, GreensPart part,
                                   const QuadSpec& spec) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  if (!(freq.value > 0.0)) throw DomainError("frequency must be > 0");
  const Reflector refl = make_reflector(surface, freq);
  if (!refl.perfect && refl.eps == cd(1.0, 0.0)) return 0.0;
  const double k2 = freq.k_squared();
  const double k = std::sqrt(std::abs(k2));
  const double pref = 1.0 / (8.0 * pi);

  if (freq.axis == Axis::imaginary) {
    if (part == GreensPart::imag) return 0.0;
    // kappa = xi/c + u/(2z), real integrand.
    auto f = [&](double u) {
      const cd kappa(k + u / (2.0 * z), 0.0);
      return integrand(component, kappa, k2, z, refl(kappa, k2)).real();
    };
    QuadSpec s = spec;
    s.tail_scale = 1.0;
    s.split_points.clear();
    return pref / (2.0 * z) * integrate_adaptive(RealFn(f), 0.0, INFINITY, s).value;
  }

  // Propagating branch: kappa = -i q, q in (0, k); contributes i k int_0^1 F(-i k x) dx.
  auto fprop = [&](double x) {
    const cd kappa(0.0, -k * x);
    const cd v = integrand(component, kappa, k2, z, refl(kappa, k2));
    // Part of i * v.
    return part == GreensPart::real ? -v.imag() : v.real();
  };
  QuadSpec sp = spec;
  sp.split_points.clear();
  const double prop = k * integrate_adaptive(RealFn(fprop), 0.0, 1.0, sp).value;

  // Evanescent tail in u = 2 kappa z.
  auto fev = [&](double u) {
    const cd kappa(u / (2.0 * z), 0.0);
    return pick(integrand(component, kappa, k2, z, refl(kappa, k2)), part);
  };
  QuadSpec se = spec;
  se.tail_scale = 1.0;
  se.split_points.clear();
  if (!refl.perfect) {
    const double m = std::sqrt(std::abs(refl.eps - 1.0));
    se.split_points.push_back(2.0 * z * k);
    se.split_points.push_back(2.0 * z * k * m);
    const double re = refl.eps.real();
    if (re < -1.0) se.split_points.push_back(2.0 * z * k / std::sqrt(-re - 1.0));
  }
  // Keep the prop/evanescent pieces on a common absolute scale.
  se.abs_tol = std::max(se.abs_tol, spec.rel_tol * 1e-3 * std::abs(prop) * 2.0 * z);
  const double ev = integrate_adaptive(RealFn(fev), 0.0, INFINITY, se).value / (2.0 * z);
  return pref * (prop + ev);
}

GreensDiag greens_scattering_diag(const SurfaceModel& surface, double z, Frequency freq,
                                  const QuadSpec& spec) {
  auto get = [&](GreensComponent c) {
    const double re = greens_scattering_component(surface, z, freq, c, GreensPart::real, spec);
    const double im = freq.axis == Axis::real
                          ? greens_scattering_component(surface, z, freq, c, GreensPart::imag, spec)
                          : 0.0;
    return cd(re, im);
  };
  const cd xx = get(GreensComponent::xx);
  return {xx, xx, get(GreensComponent::zz)};
}

double recoil_free(double omega) {
  if (omega < 0.0) throw DomainError("frequency must be >= 0");
  const double k = omega / constants::c;
  return k * k * k / (15.0 * pi);
}

double recoil_pc_closed_form(double omega, double z) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  const double k = omega / constants::c;
  const double t = k * z;
  if (t < 0.5) {
    // (k^3/8pi) int_0^1 (x^2 + x^4) cos(2 t x) dx, expanded in t.
    double sum = 0.0;
    double term = 1.0;  // (-1)^n (2t)^{2n} / (2n)!
    for (int n = 0; n < 40; ++n) {
      const double add = term * (1.0 / (2 * n + 3) + 1.0 / (2 * n + 5));
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      term *= -(2.0 * t) * (2.0 * t) / ((2.0 * n + 1.0) * (2.0 * n + 2.0));
    }
    return k * k * k / (8.0 * pi) * sum;
  }
  const double t2 = t * t;
  const double t5 = t2 * t2 * t;
  return k * k * k / (32.0 * pi * t5) * (t2 - 1.0) *
         (6.0 * t * std::cos(2.0 * t) + (4.0 * t2 - 3.0) * std::sin(2.0 * t));
}

double recoil_scattering(const SurfaceModel& surface, double z, double omega, RecoilMethod method,
                         const QuadSpec& spec) {
  if (!(z > 0.0)) throw DomainError("distance z must be > 0");
  if (!(omega > 0.0)) throw DomainError("frequency must be > 0");
  switch (method) {
    case RecoilMethod::integral:
      return greens_scattering_component(surface, z, Frequency::real(omega),
                                         GreensComponent::xx_recoil, GreensPart::imag, spec);
    case RecoilMethod::pc_closed_form:
      if (!surface.is_perfect_conductor()) {
        throw ModelError("pc_closed_form requires a perfect-conductor surface");
      }
      return recoil_pc_closed_form(omega, z);
    case RecoilMethod::nearfield_asymptote: {
      if (surface.is_perfect_conductor()) {
        throw ModelError("nearfield_asymptote requires a finite-permittivity surface");
      }
      const cd eps = surface.permittivity(Frequency::real(omega));
      const double k = omega / constants::c;
      const double t = k * z;
      return 3.0 * k * k * k / (32.0 * pi * std::pow(t, 5)) * ((eps - 1.0) / (eps + 1.0)).imag();
    }
  }
  return 0.0;
}

}  // namespace surfqbm
