#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/kernels.hpp"
#include "surfqbm/spectral.hpp"

using namespace surfqbm;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double wc = 1e14;

double thermal_rate(double T) { return constants::kB * T / constants::hbar; }

Spectrum ohmic_cubed() {
  return [](double w) { return std::pow(w / wc, 3) * std::exp(-w / wc); };
}

}  // namespace

TEST(Kernels, SymmetryAndOrigin) {
  BathKernels k(ohmic_cubed(), 0.5 * wc, 300.0);
  EXPECT_EQ(k.dissipation(0.0), 0.0);
  for (double tau : {1e-15, 3e-14, 2e-13}) {
    EXPECT_DOUBLE_EQ(k.noise(tau), k.noise(-tau));
    EXPECT_DOUBLE_EQ(k.dissipation(tau), -k.dissipation(-tau));
  }
  EXPECT_GT(k.noise(0.0), 0.0);
  EXPECT_NEAR(k.cutoff(), 20.0 * std::max(0.5 * wc, thermal_rate(300.0)), 1.0);
}

TEST(Kernels, NoiseAtOriginIsTheWeightedIntegral) {
  // 2 hbar int w^3 e^-w = 12 hbar (in units of wc); the far cutoff costs ~2e-5
  BathKernels k(ohmic_cubed(), 0.0, 0.0, KernelOptions{1000.0 * wc});
  EXPECT_NEAR(k.noise(0.0) / (12.0 * constants::hbar * wc), 1.0, 1e-4);
  // nothing sets a frequency scale
  EXPECT_THROW(BathKernels(ohmic_cubed(), 0.0, 0.0, KernelOptions{INFINITY}), DomainError);
}

TEST(Kernels, CutoffTooLow) {
  auto linear = [](double w) { return w; };
  KernelOptions o;
  o.cutoff = INFINITY;
  EXPECT_THROW(BathKernels(linear, wc, 0.0, o), DomainError);
  EXPECT_THROW(BathKernels(linear, 0.0, 0.0), DomainError);
  EXPECT_THROW(BathKernels(linear, -1.0, 1.0), DomainError);
}

// With no carrier the windowed transforms pick out pi hbar J(nu) and
// pi hbar J(nu) coth(hbar nu / 2 kB T), so their ratio is the thermal factor.
TEST(Kernels, DetailedBalance) {
  const double T = 3.0 * constants::hbar * wc / constants::kB;
  BathKernels k(ohmic_cubed(), 0.0, T, KernelOptions{INFINITY});
  TimeWindow win;
  win.eta = 0.01 * wc;
  win.rel_tol = 1e-5;
  for (double nu : {0.5 * wc, 1.0 * wc, 3.0 * wc}) {
    const double d = kernel_transform(k, KernelKind::dissipation, nu, win);
    const double n = kernel_transform(k, KernelKind::noise, nu, win);
    const double j = ohmic_cubed()(nu);
    EXPECT_NEAR(d / (pi * constants::hbar * j), 1.0, 0.02) << "nu " << nu;
    EXPECT_NEAR((n / d) / coth_factor(nu, T, CothConvention::half), 1.0, 0.02) << "nu " << nu;
  }
}

TEST(Kernels, CarrierReproducesTheSidebands) {
  const double w0 = wc, Omega = 0.2 * wc, m = 1e-18;
  const double T = constants::hbar * wc / constants::kB;
  BathKernels k(ohmic_cubed(), w0, T);
  TimeWindow win;
  win.eta = 0.01 * wc;
  win.rel_tol = 1e-5;
  const auto direct = coefficients_from_kernels(k, Omega, m, win);
  auto reg = [&](double w) { return k.regularized_spectrum(w); };
  const auto side = sideband_coefficients(reg, w0, Omega, T, m, CothConvention::half);
  EXPECT_NEAR(direct.gamma / side.gamma, 1.0, 1e-2);
  EXPECT_NEAR(direct.lambda / side.lambda, 1.0, 1e-2);
  EXPECT_THROW(kernel_transform(k, KernelKind::noise, Omega, TimeWindow{}), DomainError);
}
