#pragma once

#include <map>
#include <string>
#include <vector>

#include "surfqbm/materials.hpp"

namespace surfqbm {

struct DriveSpec {
  double wavelength = 1064e-9;  // m
  double intensity = 0.0;       // W/m^2; polarization is fixed along x

  double omega() const;            // 2 pi c / lambda
  double k() const;                // omega / c
  double field_amplitude() const;  // from I = eps0 c |E|^2 / 2
  bool operator==(const DriveSpec&) const = default;
};

// E(z) = amplitude_max cos(k0 (z - z_peak)), z_peak = (pi/2 - phase)/k0.
// phase = 0 puts a node on the surface and the first antinode at lambda/4.
struct StandingWaveProfile {
  double amplitude_max = 0.0;  // V/m
  double phase = 0.0;          // rad
  double k0 = 0.0;             // 1/m

  double z_peak() const;
  double amplitude(double z) const;
  double derivative(double z) const;
};

struct GasSpec {
  double pressure = 0.0;          // Pa
  double molecule_mass = 5e-26;   // kg
  double temperature = 300.0;     // K
  bool operator==(const GasSpec&) const = default;
};

enum class CothConvention {
  half,     // coth(hbar w / 2 kB T), consistent with the noise kernel
  literal,  // coth(hbar w / kB T)
};

enum class GridSpacing { linear, log };

// Either an explicit list of distances or a generated grid.
struct DistanceGrid {
  std::vector<double> values;  // m; used when non-empty
  double z_min = 10e-9;
  double z_max = 1e-6;
  int count = 0;
  GridSpacing spacing = GridSpacing::log;

  std::vector<double> points() const;
  bool operator==(const DistanceGrid&) const = default;
};

struct ScenarioConfig {
  std::string particle_material = "silica_fused";
  ParticleSpec particle;
  std::string surface_model = "gold_drude";
  SurfaceModel surface;
  DriveSpec drive;
  double phase = 0.0;             // rad, standing-wave phase
  double temperature = 300.0;     // K
  double trap_frequency = 3e6;    // rad/s
  GasSpec gas;
  DistanceGrid grid;
  CothConvention coth = CothConvention::half;
  PolarizabilityMode polarizability_mode = PolarizabilityMode::real_part;

  double omega0() const { return drive.omega(); }
  double k0() const { return drive.k(); }
  double mass() const { return particle.mass(); }
  double z_tilde(double z) const { return k0() * z; }
  StandingWaveProfile profile() const;
  // Polarizability in the configured mode; real-part by default.
  double alpha_real(double omega) const;
  std::complex<double> alpha(Frequency f) const;
  std::vector<double> distances() const { return grid.points(); }

  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

// Dotted key path -> value, applied after the document is parsed.
using Overrides = std::vector<std::pair<std::string, std::string>>;

// INI-style document with sections [particle] [surface] [drive] [environment]
// [grid] [model]. Throws ConfigError naming the offending key.
ScenarioConfig load_config(const std::string& document, const Overrides& overrides = {});
ScenarioConfig load_config_file(const std::string& path, const Overrides& overrides = {});
std::string serialize(const ScenarioConfig& cfg);

// Parses "a.b=value".
std::pair<std::string, std::string> parse_override(const std::string& text);

// Intensity that makes the trap frequency sqrt(alpha k0^2 E^2 / 2M) equal omega.
double intensity_for_trap_frequency(const ScenarioConfig& cfg, double omega);
ScenarioConfig derive_intensity_from_trap_frequency(ScenarioConfig cfg);
// Shift the standing wave so that its first antinode sits at z.
ScenarioConfig with_antinode_at(ScenarioConfig cfg, double z);

// Default scenario: silica sphere R = 72 nm, gold surface, 1064 nm drive.
ScenarioConfig default_config();
std::string default_config_text();

}  // namespace surfqbm
