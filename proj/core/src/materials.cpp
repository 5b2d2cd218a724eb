#include "surfqbm/materials.hpp"

#include <cmath>
#include <numbers>

#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"

namespace surfqbm {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
}  // namespace

double Frequency::k_squared() const {
  const double k = value / constants::c;
  return axis == Axis::real ? k * k : -k * k;
}

void validate(const PermittivityModel& model) {
  std::visit(overloaded{
                 [](const Vacuum&) {},
                 [](const Drude& d) {
                   if (!(d.plasma > 0.0)) throw DomainError("Drude plasma frequency must be > 0");
                   if (!(d.damping >= 0.0)) throw DomainError("Drude damping must be >= 0");
                 },
                 [](const DrudeLorentz& dl) {
                   for (const auto& o : dl.oscillators) {
                     if (!(o.plasma > 0.0) || !(o.resonance > 0.0)) {
                       throw DomainError("Lorentz oscillator frequencies must be > 0");
                     }
                     if (!(o.damping >= 0.0)) throw DomainError("Lorentz damping must be >= 0");
                   }
                 },
             },
             model);
}

std::complex<double> permittivity(const PermittivityModel& model, Frequency freq) {
  if (freq.value < 0.0) throw DomainError("frequency must be >= 0");
  const std::complex<double> w = freq.complex();
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> eps = std::visit(
      overloaded{
          [](const Vacuum&) { return std::complex<double>(1.0, 0.0); },
          [&](const Drude& d) {
            if (freq.value == 0.0) throw DomainError("Drude permittivity is singular at omega = 0");
            return 1.0 - d.plasma * d.plasma / (w * w + i * w * d.damping);
          },
          [&](const DrudeLorentz& dl) {
            std::complex<double> e(1.0, 0.0);
            for (const auto& o : dl.oscillators) {
              e += o.plasma * o.plasma / (o.resonance * o.resonance - w * w - i * o.damping * w);
            }
            return e;
          },
      },
      model);
  if (freq.axis == Axis::imaginary) eps.imag(0.0);
  return eps;
}

SurfaceModel SurfaceModel::perfect_conductor() {
  SurfaceModel s;
  s.perfect_ = true;
  s.name_ = "perfect_conductor";
  s.model_ = Vacuum{};
  return s;
}

SurfaceModel SurfaceModel::dielectric(PermittivityModel model, std::string name) {
  validate(model);
  SurfaceModel s;
  s.perfect_ = false;
  s.name_ = std::move(name);
  s.model_ = std::move(model);
  return s;
}

const PermittivityModel& SurfaceModel::model() const {
  if (perfect_) {
    throw ModelError("perfect conductor has no finite permittivity; use r_p = 1, r_s = -1");
  }
  return model_;
}

std::complex<double> SurfaceModel::permittivity(Frequency freq) const {
  return surfqbm::permittivity(model(), freq);
}

double ParticleSpec::volume() const {
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

double ParticleSpec::mass() const { return mass_density * volume(); }

void ParticleSpec::validate() const {
  if (!(radius > 0.0)) throw DomainError("particle radius must be > 0");
  if (!(mass_density > 0.0)) throw DomainError("particle density must be > 0");
  surfqbm::validate(permittivity);
}

std::complex<double> polarizability(const ParticleSpec& particle, Frequency freq,
                                    PolarizabilityMode mode) {
  const std::complex<double> eps = surfqbm::permittivity(particle.permittivity, freq);
  const std::complex<double> denom = eps + 2.0;
  if (std::abs(denom) < 1e-12) throw DomainError("polarizability pole: eps_P = -2");
  std::complex<double> a = 3.0 * constants::eps0 * particle.volume() * (eps - 1.0) / denom;
  if (mode == PolarizabilityMode::real_part || freq.axis == Axis::imaginary) a.imag(0.0);
  return a;
}

double thermal_occupancy(double omega, double temperature) {
  if (!(omega > 0.0)) throw DomainError("thermal_occupancy requires omega > 0");
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::kB * temperature);
  if (x > 700.0) return 0.0;
  return 1.0 / std::expm1(x);
}

namespace presets {

DrudeLorentz silica_fused() {
  return DrudeLorentz{{{1.75e14, 1.32e14, 4.28e13}, {2.96e16, 2.72e16, 8.09e15}}};
}

Drude gold_drude() { return Drude{1.37e16, 5.31e13}; }

bool has_permittivity(const std::string& name) {
  return name == "silica_fused" || name == "gold_drude" || name == "vacuum";
}

PermittivityModel permittivity(const std::string& name) {
  if (name == "silica_fused") return silica_fused();
  if (name == "gold_drude") return gold_drude();
  if (name == "vacuum") return Vacuum{};
  throw ModelError("unknown material preset '" + name + "'");
}

bool has_surface(const std::string& name) {
  return name == "perfect_conductor" || has_permittivity(name);
}

SurfaceModel surface(const std::string& name) {
  if (name == "perfect_conductor") return SurfaceModel::perfect_conductor();
  return SurfaceModel::dielectric(permittivity(name), name);
}

}  // namespace presets

}  // namespace surfqbm
