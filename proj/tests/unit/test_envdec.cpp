#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "surfqbm/config.hpp"
#include "surfqbm/constants.hpp"
#include "surfqbm/diagnostics.hpp"
#include "surfqbm/envdec.hpp"
#include "surfqbm/error.hpp"

using namespace surfqbm;

namespace {

constexpr double pi = std::numbers::pi;

ParticleSpec silica() { return default_config().particle; }

GasSpec gas_at(double pascal) {
  GasSpec g;
  g.pressure = pascal;
  return g;
}

}  // namespace

TEST(Gas, FormulaAndScaling) {
  const auto p = silica();
  EXPECT_EQ(lambda_gas(gas_at(0.0), p), 0.0);
  const GasSpec g = gas_at(100.0);  // 1 mbar
  const double expect = 8.0 * g.pressure * std::sqrt(2.0 * pi * g.molecule_mass) * p.radius * p.radius *
                        std::sqrt(constants::kB * g.temperature) /
                        (3.0 * constants::hbar * constants::hbar);
  const double l = lambda_gas(g, p);
  EXPECT_NEAR(l / expect, 1.0, 1e-12);
  EXPECT_GT(l, 1e33);
  EXPECT_LT(l, 1e34);
  EXPECT_NEAR(lambda_gas(gas_at(1e-9), p) / l, 1e-11, 1e-22);
  ParticleSpec big = p;
  big.radius *= 2.0;
  EXPECT_NEAR(lambda_gas(g, big) / l, 4.0, 1e-12);
  EXPECT_THROW(lambda_gas(gas_at(-1.0), p), DomainError);
}

TEST(Blackbody, FixedPolarizabilityFormula) {
  const double alpha = 2e-32, T = 10.0;
  const double a = alpha / (pi * constants::eps0);
  const double x = constants::kB * T / (constants::hbar * constants::c);
  const double expect = std::tgamma(9.0) * constants::c / (18.0 * pi) * a * a * std::pow(x, 9) *
                        std::riemann_zeta(9.0);
  EXPECT_NEAR(lambda_blackbody_fixed_alpha(T, alpha) / expect, 1.0, 1e-9);
  EXPECT_NEAR(lambda_blackbody_fixed_alpha(2.0 * T, alpha) / lambda_blackbody_fixed_alpha(T, alpha), 512.0,
              1e-9);
  EXPECT_EQ(lambda_blackbody_fixed_alpha(0.0, alpha), 0.0);
}

TEST(Blackbody, SilicaSphere) {
  set_warning_handler([](const std::string&) {});
  const auto p = silica();
  EXPECT_EQ(lambda_blackbody(0.0, p), 0.0);
  double prev = 0.0;
  for (double T = 0.5; T < 400.0; T *= 1.5) {
    const double l = lambda_blackbody(T, p);
    EXPECT_GT(l, prev) << "T " << T;
    prev = l;
  }
  // well below the phonon resonances alpha is the static value
  const double w = 2.0 * pi * constants::c * 1.0 / 2.897771955e-3;
  EXPECT_NEAR(blackbody_peak_frequency(1.0) / w, 1.0, 1e-9);
  const double a_static = polarizability(p, Frequency::real(0.0)).real();
  EXPECT_NEAR(lambda_blackbody(1.0, p) / lambda_blackbody_fixed_alpha(1.0, a_static), 1.0, 1e-3);
  EXPECT_GT(lambda_blackbody(1.0, p), 1e-8);
  EXPECT_LT(lambda_blackbody(1.0, p), 1e-6);
  EXPECT_GT(lambda_blackbody(100.0, p), 1e10);
  EXPECT_LT(lambda_blackbody(100.0, p), 1e12);
  EXPECT_THROW(lambda_blackbody(-1.0, p), DomainError);
  set_warning_handler(nullptr);
}
