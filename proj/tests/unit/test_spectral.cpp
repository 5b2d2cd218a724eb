#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "surfqbm/config.hpp"
#include "surfqbm/constants.hpp"
#include "surfqbm/diagnostics.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/greens.hpp"
#include "surfqbm/spectral.hpp"

using namespace surfqbm;

namespace {

constexpr double pi = std::numbers::pi;

ScenarioConfig scenario(const Overrides& ov = {}) {
  return derive_intensity_from_trap_frequency(load_config(default_config_text(), ov));
}

class Spectral : public ::testing::Test {
 protected:
  void SetUp() override {
    set_warning_handler([](const std::string&) {});
  }
  void TearDown() override { set_warning_handler(nullptr); }
};

}  // namespace

TEST_F(Spectral, AntinodeFactorIsRecoilOnly) {
  const auto cfg = scenario();
  const double z = cfg.profile().z_peak();
  const double w = cfg.omega0();
  const double e = cfg.profile().amplitude_max;
  const double sc = recoil_scattering(cfg.surface, z, w, RecoilMethod::integral);
  EXPECT_NEAR(g_factor(cfg, z, w, SpectralPart::total) / (e * e * (recoil_free(w) + sc)), 1.0, 1e-9);
  EXPECT_NEAR(g_factor(cfg, z, w, SpectralPart::free) / (e * e * recoil_free(w)), 1.0, 1e-12);
}

TEST_F(Spectral, ZeroIntensityIsSilent) {
  const auto cfg = load_config(default_config_text(), {{"drive.intensity", "0"}});
  EXPECT_EQ(spectral_density(cfg, 200e-9, cfg.omega0(), SpectralMode::full), 0.0);
  EXPECT_EQ(spectral_density(cfg, 200e-9, cfg.omega0(), SpectralMode::closed_form_free), 0.0);
}

TEST_F(Spectral, NonNegative) {
  const auto cfg = scenario();
  for (double z : {20e-9, 120e-9, 266e-9, 700e-9}) {
    for (double r : {0.5, 0.9, 1.0, 1.1, 2.0}) {
      EXPECT_GE(spectral_density(cfg, z, r * cfg.omega0(), SpectralMode::full), 0.0)
          << "z " << z << " w/w0 " << r;
    }
  }
}

// Free space: Lambda = (4/5) k0^2 sigma I / (hbar w0) at an antinode, with the
// Rayleigh cross-section sigma = k0^4 alpha^2 / (6 pi eps0^2).
TEST_F(Spectral, FreeSpaceAgainstCrossSection) {
  const auto cfg = scenario({{"surface.model", "vacuum"}});
  const double k = cfg.k0(), w = cfg.omega0();
  const double a = cfg.alpha_real(w);
  const double e = cfg.profile().amplitude_max;
  const double sigma = std::pow(k, 4) * a * a / (6.0 * pi * constants::eps0 * constants::eps0);
  const double intensity = 0.5 * constants::eps0 * constants::c * e * e;
  const double expect = 0.8 * k * k * sigma * intensity / (constants::hbar * w);
  EXPECT_NEAR(lambda_free_closed_form(cfg) / expect, 1.0, 1e-10);
  const auto approx = coefficients_approx(cfg, cfg.profile().z_peak());
  EXPECT_NEAR(approx.lambda / expect, 1.0, 1e-8);
  const auto side = coefficients_sideband(cfg, cfg.profile().z_peak(), SpectralMode::full);
  EXPECT_NEAR(side.lambda / expect, 1.0, 1e-2);
  EXPECT_GT(side.gamma, 0.0);
}

TEST_F(Spectral, SidebandLimits) {
  const double m = 3e-18, w0 = 1.77e15;
  auto flat = [](double) { return 2.5e-3; };
  const auto f = sideband_coefficients(flat, w0, 1e6, 0.0, m);
  EXPECT_EQ(f.gamma, 0.0);
  EXPECT_NEAR(f.lambda, pi / (2.0 * constants::hbar) * 2.5e-3, 1e-9 * f.lambda);

  auto power = [&](double w) { return 1e-3 * std::pow(w / w0, 5); };
  const auto s = sideband_coefficients(power, w0, 1e-9 * w0, 0.0, m);
  const auto a = approx_coefficients(power, w0, m);
  EXPECT_NEAR(s.gamma / a.gamma, 1.0, 1e-6);
  EXPECT_NEAR(s.lambda / a.lambda, 1.0, 1e-12);
  EXPECT_NEAR(a.gamma, pi / (2.0 * m) * 5e-3 / w0, 1e-8 * a.gamma);

  EXPECT_THROW(sideband_coefficients(flat, w0, 0.0, 0.0, m), DomainError);
  EXPECT_THROW(sideband_coefficients(flat, w0, 2.0 * w0, 0.0, m), DomainError);
}

TEST_F(Spectral, ScenarioSidebandMatchesApprox) {
  auto cfg = scenario();
  const double z = cfg.profile().z_peak();
  cfg.trap_frequency = 1e-6 * cfg.omega0();
  const auto s = coefficients_sideband(cfg, z, SpectralMode::approx);
  const auto a = coefficients_approx(cfg, z, SpectralMode::approx);
  EXPECT_NEAR(s.lambda / a.lambda, 1.0, 1e-9);
  EXPECT_NEAR(s.gamma / a.gamma, 1.0, 1e-4);
}

TEST_F(Spectral, CothConventions) {
  EXPECT_EQ(coth_factor(1e15, 0.0, CothConvention::half), 1.0);
  EXPECT_EQ(coth_factor(1e15, 0.0, CothConvention::literal), 1.0);
  const double T = 100.0;
  const double w = constants::kB * T / constants::hbar;
  EXPECT_NEAR(coth_factor(w, T, CothConvention::half), 1.0 / std::tanh(0.5), 1e-12);
  EXPECT_NEAR(coth_factor(w, T, CothConvention::literal), 1.0 / std::tanh(1.0), 1e-12);
  auto J = [](double) { return 1.0; };
  const auto h = sideband_coefficients(J, 3.0 * w, 0.1 * w, T, 1e-18, CothConvention::half);
  const auto l = sideband_coefficients(J, 3.0 * w, 0.1 * w, T, 1e-18, CothConvention::literal);
  EXPECT_GT(h.lambda, l.lambda * 1.01);
}

TEST_F(Spectral, PerfectConductorDoublesNearTheSurface) {
  const auto cfg = scenario({{"surface.model", "perfect_conductor"}});
  const double free = lambda_free_closed_form(cfg);
  EXPECT_EQ(lambda_pc_nearfield_closed_form(cfg), 2.0 * free);
  double lo = INFINITY, hi = 0.0;
  for (double t = 0.01; t <= 0.05 + 1e-12; t += 0.01) {
    const double l = coefficients_approx(cfg, t / cfg.k0()).lambda;
    lo = std::min(lo, l);
    hi = std::max(hi, l);
    EXPECT_NEAR(l / free, 2.0, 2e-2) << "kz " << t;
  }
  EXPECT_LT(hi / lo - 1.0, 0.02);
  EXPECT_NEAR(coefficients_approx(cfg, 0.01 / cfg.k0()).lambda / free, 2.0, 1e-3);
  const auto cf = coefficients_approx(cfg, 0.01 / cfg.k0(), SpectralMode::closed_form_pc_nearfield);
  EXPECT_NEAR(cf.lambda / (2.0 * free), 1.0, 1e-9);
}

TEST_F(Spectral, GoldNearField) {
  const auto base = scenario();
  const double z = 0.01 / base.k0();
  // The closed form assumes an antinode at z, so move the standing wave there.
  const auto cfg = with_antinode_at(base, z);
  const auto full = coefficients_approx(cfg, z, SpectralMode::full);
  const auto closed = lambda_metal_nearfield(cfg, z);
  EXPECT_NEAR(full.lambda / closed.lambda, 1.0, 1e-3);
  const auto cf = coefficients_approx(cfg, z, SpectralMode::closed_form_metal_nearfield);
  EXPECT_NEAR(cf.lambda / (closed.lambda + lambda_free_closed_form(cfg)), 1.0, 1e-4);
}

TEST_F(Spectral, MetalClosedForm) {
  const auto cfg = scenario();
  for (double t : {0.01, 0.03, 0.1}) {
    const double z = t / cfg.k0();
    const auto m = lambda_metal_nearfield(cfg, z);
    EXPECT_NEAR(m.lambda / (0.75 * m.gamma_sc / (z * z)), 1.0, 1e-12);
    EXPECT_NEAR(lambda_metal_nearfield(cfg, 2.0 * z).lambda / m.lambda, 1.0 / 32.0, 1e-12);
  }
  EXPECT_THROW(lambda_metal_nearfield(scenario({{"surface.model", "perfect_conductor"}}), 1e-8),
               ModelError);
  EXPECT_THROW(spectral_density(cfg, 1e-8, cfg.omega0(), SpectralMode::closed_form_pc_nearfield),
               ModelError);
}

TEST_F(Spectral, FullAndApproxAgreeNearEquilibrium) {
  const auto cfg = scenario();
  const double z0 = cfg.profile().z_peak() - 1.7e-9;
  const auto full = coefficients_sideband(cfg, z0, SpectralMode::full);
  const auto approx = coefficients_sideband(cfg, z0, SpectralMode::approx);
  EXPECT_NEAR(full.lambda / approx.lambda, 1.0, 0.1);
  EXPECT_NEAR(full.gamma / approx.gamma, 1.0, 0.1);
}

TEST_F(Spectral, UnitsOfTheDensity) {
  // pi J / (2 hbar) is Hz/m^2, so J * M * Omega / hbar is 1/s when multiplied through.
  const auto cfg = scenario();
  const double j = spectral_density(cfg, cfg.profile().z_peak(), cfg.omega0(), SpectralMode::approx);
  const auto c = coefficients_approx(cfg, cfg.profile().z_peak());
  EXPECT_NEAR(c.lambda, pi * j / (2.0 * constants::hbar), 1e-12 * c.lambda);
  // order of magnitude of the trapped scenario
  EXPECT_GT(c.lambda, 1e25);
  EXPECT_LT(c.lambda, 1e28);
}
