#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "surfqbm/config.hpp"
#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"

using namespace surfqbm;

namespace {

std::string error_key(const std::string& doc, const Overrides& ov = {}) {
  try {
    load_config(doc, ov);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

std::string without_line(std::string doc, const std::string& line) {
  const auto pos = doc.find(line);
  if (pos != std::string::npos) doc.erase(pos, line.size() + 1);
  return doc;
}

}  // namespace

TEST(Constants, Consistent) {
  EXPECT_NEAR(constants::mu0 * constants::eps0 * constants::c * constants::c, 1.0, 1e-9);
  EXPECT_GT(constants::hbar, 0.0);
  EXPECT_GT(constants::kB, 0.0);
}

TEST(Config, DefaultScenario) {
  const ScenarioConfig cfg = load_config(default_config_text());
  EXPECT_NEAR(cfg.k0(), 2.0 * std::numbers::pi / 1064e-9, 1e-6);
  EXPECT_NEAR(cfg.k0(), 5.905e6, 1e3);
  const double m = 2000.0 * 4.0 / 3.0 * std::numbers::pi * std::pow(72e-9, 3);
  EXPECT_NEAR(cfg.mass() / m, 1.0, 1e-14);
  EXPECT_NEAR(cfg.mass(), 3.13e-18, 0.01e-18);
  EXPECT_EQ(cfg.surface.name(), "gold_drude");
  EXPECT_EQ(cfg.distances().size(), 31u);
  EXPECT_EQ(cfg, default_config());
}

TEST(Config, ValidationErrorsNameTheKey) {
  const std::string d = default_config_text();
  EXPECT_EQ(error_key(d, {{"particle.radius", "0"}}), "particle.radius");
  EXPECT_EQ(error_key(d, {{"drive.intensity", "-1"}}), "drive.intensity");
  EXPECT_EQ(error_key(d, {{"surface.model", "unobtainium"}}), "surface.model");
  EXPECT_EQ(error_key(d, {{"particle.material", "cheese"}}), "particle.material");
  EXPECT_EQ(error_key(d, {{"particle.colour", "red"}}), "particle.colour");
  EXPECT_EQ(error_key(d, {{"model.coth_convention", "third"}}), "model.coth_convention");
  EXPECT_EQ(error_key(d, {{"grid.spacing", "cubic"}}), "grid.spacing");
  EXPECT_EQ(error_key(d, {{"drive.wavelength", "abc"}}), "drive.wavelength");
  EXPECT_EQ(error_key(without_line(d, "radius = 72e-9")), "particle.radius");
  EXPECT_EQ(error_key(without_line(d, "model = gold_drude")), "surface.model");
  EXPECT_EQ(error_key(d + "\n[extra]\nx = 1\n"), "extra.x");
}

TEST(Config, DrudeSurfaceNeedsParameters) {
  const std::string d = default_config_text();
  EXPECT_EQ(error_key(d, {{"surface.model", "drude"}}), "surface.plasma_frequency");
  const auto cfg = load_config(d, {{"surface.model", "drude"},
                                   {"surface.plasma_frequency", "1.2e16"},
                                   {"surface.damping", "1e14"}});
  EXPECT_EQ(cfg.surface.model(), PermittivityModel(Drude{1.2e16, 1e14}));
}

TEST(Config, OverridesApplyAfterParse) {
  const auto cfg = load_config(default_config_text(), {{"drive.intensity", "5e8"}});
  EXPECT_EQ(cfg.drive.intensity, 5e8);
  const auto kv = parse_override("drive.intensity=5e8");
  EXPECT_EQ(kv.first, "drive.intensity");
  EXPECT_EQ(kv.second, "5e8");
  EXPECT_THROW(parse_override("no_equals_sign"), ConfigError);
  EXPECT_THROW(parse_override("nodot=1"), ConfigError);
}

TEST(Config, RoundTrip) {
  const std::vector<Overrides> variants{
      {},
      {{"drive.intensity", "1.8234567890123e11"}, {"drive.phase", "0.3"}},
      {{"surface.model", "perfect_conductor"}, {"model.coth_convention", "literal"}},
      {{"surface.model", "drude"}, {"surface.plasma_frequency", "1.1e16"}, {"surface.damping", "3e13"}},
      {{"model.polarizability", "complex"}, {"environment.temperature", "0"}},
  };
  for (const auto& ov : variants) {
    const ScenarioConfig a = load_config(default_config_text(), ov);
    const ScenarioConfig b = load_config(serialize(a));
    EXPECT_EQ(a, b) << serialize(a);
    EXPECT_EQ(serialize(a), serialize(b));
  }
  std::string doc = default_config_text();
  doc = doc.substr(0, doc.find("[grid]")) + "[grid]\nvalues = 1e-8, 2.5e-8,1e-7\n";
  const ScenarioConfig a = load_config(doc);
  ASSERT_EQ(a.distances().size(), 3u);
  EXPECT_EQ(a.distances()[1], 2.5e-8);
  EXPECT_EQ(load_config(serialize(a)), a);
}

TEST(Config, DistanceGrid) {
  DistanceGrid g;
  g.z_min = 1e-8;
  g.z_max = 1e-6;
  g.count = 3;
  g.spacing = GridSpacing::log;
  auto p = g.points();
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[1], 1e-7, 1e-20);
  g.spacing = GridSpacing::linear;
  p = g.points();
  EXPECT_NEAR(p[1], 0.505e-6, 1e-18);
  g.count = 0;
  EXPECT_TRUE(g.points().empty());
}

TEST(Config, StandingWaveProfile) {
  const auto cfg = default_config();
  const auto prof = cfg.profile();
  EXPECT_NEAR(prof.z_peak(), 1064e-9 / 4.0, 1e-18);
  EXPECT_NEAR(prof.amplitude(prof.z_peak()), prof.amplitude_max, 0.0);
  EXPECT_NEAR(prof.derivative(prof.z_peak()), 0.0, 1e-9 * prof.amplitude_max * prof.k0);
  EXPECT_NEAR(prof.amplitude(0.0), 0.0, 1e-12 * prof.amplitude_max);
  EXPECT_NEAR(prof.amplitude_max, std::sqrt(2.0 * 1e-11 / (constants::eps0 * constants::c)), 1e-20);
  for (double z = 1e-9; z < 2e-6; z *= 1.3) EXPECT_LE(std::abs(prof.amplitude(z)), prof.amplitude_max);

  const auto moved = with_antinode_at(cfg, 40e-9);
  EXPECT_NEAR(moved.profile().z_peak(), 40e-9, 1e-20);
}

TEST(Config, DeriveIntensityFromTrapFrequency) {
  const auto cfg = derive_intensity_from_trap_frequency(default_config());
  const double a = cfg.alpha_real(cfg.omega0());
  const double e = cfg.profile().amplitude_max;
  const double omega = std::sqrt(a * cfg.k0() * cfg.k0() * e * e / (2.0 * cfg.mass()));
  EXPECT_NEAR(omega / 3e6, 1.0, 1e-12);
  EXPECT_NEAR(cfg.drive.intensity, 1.8e11, 0.1e11);
}

TEST(Config, MissingFile) {
  EXPECT_THROW(load_config_file("/nonexistent/surfqbm.ini"), ConfigError);
}
