#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace surfqbm {

struct Vacuum {
  bool operator==(const Vacuum&) const = default;
};

// eps(w) = 1 - wp^2 / (w^2 + i w gamma)
struct Drude {
  double plasma = 0.0;   // rad/s
  double damping = 0.0;  // rad/s
  bool operator==(const Drude&) const = default;
};

struct LorentzOscillator {
  double plasma = 0.0;     // rad/s
  double resonance = 0.0;  // rad/s
  double damping = 0.0;    // rad/s
  bool operator==(const LorentzOscillator&) const = default;
};

// eps(w) = 1 + sum_i wp_i^2 / (wT_i^2 - w^2 - i gamma_i w)
struct DrudeLorentz {
  std::vector<LorentzOscillator> oscillators;
  bool operator==(const DrudeLorentz&) const = default;
};

using PermittivityModel = std::variant<Vacuum, Drude, DrudeLorentz>;

enum class Axis { real, imaginary };

// A frequency on the real axis (omega) or the positive imaginary axis (i xi).
struct Frequency {
  double value = 0.0;  // rad/s
  Axis axis = Axis::real;

  static Frequency real(double omega) { return {omega, Axis::real}; }
  static Frequency imaginary(double xi) { return {xi, Axis::imaginary}; }
  std::complex<double> complex() const {
    return axis == Axis::real ? std::complex<double>(value, 0.0) : std::complex<double>(0.0, value);
  }
  // k^2 = omega^2 / c^2, negative on the imaginary axis.
  double k_squared() const;
};

void validate(const PermittivityModel& model);

// Throws DomainError at the Drude pole (omega = 0). On the imaginary axis the
// result is real.
std::complex<double> permittivity(const PermittivityModel& model, Frequency freq);

// Planar half-space. A perfect conductor is a reflection-level model
// (r_p = 1, r_s = -1) and has no finite permittivity.
class SurfaceModel {
 public:
  SurfaceModel() = default;
  static SurfaceModel perfect_conductor();
  static SurfaceModel dielectric(PermittivityModel model, std::string name = "custom");

  bool is_perfect_conductor() const noexcept { return perfect_; }
  const std::string& name() const noexcept { return name_; }
  // Throws ModelError for a perfect conductor.
  const PermittivityModel& model() const;
  std::complex<double> permittivity(Frequency freq) const;

  bool operator==(const SurfaceModel&) const = default;

 private:
  bool perfect_ = false;
  std::string name_ = "vacuum";
  PermittivityModel model_ = Vacuum{};
};

struct ParticleSpec {
  double radius = 0.0;        // m
  double mass_density = 0.0;  // kg/m^3
  PermittivityModel permittivity = Vacuum{};

  double volume() const;
  double mass() const;
  void validate() const;
  bool operator==(const ParticleSpec&) const = default;
};

enum class PolarizabilityMode { complex, real_part };

// Clausius-Mossotti alpha = 3 eps0 V (eps - 1)/(eps + 2), in C m^2 / V.
std::complex<double> polarizability(const ParticleSpec& particle, Frequency freq,
                                    PolarizabilityMode mode = PolarizabilityMode::complex);

// Bose-Einstein occupation; exactly 0 at T = 0. Throws DomainError for omega <= 0.
double thermal_occupancy(double omega, double temperature);

namespace presets {
// Two-oscillator fused silica (rad/s).
DrudeLorentz silica_fused();
// Gold, wp = 1.37e16 rad/s (9 eV), gamma = 5.31e13 rad/s (35 meV).
Drude gold_drude();

// Names: "silica_fused", "gold_drude", "vacuum".
bool has_permittivity(const std::string& name);
PermittivityModel permittivity(const std::string& name);
// Names: the permittivity names plus "perfect_conductor".
bool has_surface(const std::string& name);
SurfaceModel surface(const std::string& name);
}  // namespace presets

}  // namespace surfqbm
