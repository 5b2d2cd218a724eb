#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "surfqbm/config.hpp"
#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/greens.hpp"
#include "surfqbm/quadrature.hpp"

using namespace surfqbm;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Quadrature, ExponentialTail) {
  QuadSpec s;
  s.rel_tol = 1e-12;
  auto r = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY, s);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
  EXPECT_GE(r.abs_error_estimate, 0.0);
  EXPECT_GT(r.evaluations, 0u);
}

TEST(Quadrature, CubicTimesExponential) {
  QuadSpec s;
  s.rel_tol = 1e-12;
  auto r = integrate_adaptive([](double x) { return x * x * x * std::exp(-2.0 * x); }, 0.0, INFINITY, s);
  EXPECT_NEAR(r.value, 3.0 / 8.0, 1e-12);
}

TEST(Quadrature, DampedSine) {
  QuadSpec s;
  s.rel_tol = 1e-10;
  auto r = integrate_adaptive([](double x) { return std::sin(x) * std::exp(-x / 10.0); }, 0.0,
                              INFINITY, s);
  EXPECT_NEAR(r.value, 100.0 / 101.0, 1e-8);
}

TEST(Quadrature, ImaginaryFrequencyIntegrand) {
  // xi^2 / (1 + xi^2)^3 over [0, inf) = pi / 16
  QuadSpec s;
  s.rel_tol = 1e-11;
  auto f = [](double x) { return x * x / std::pow(1.0 + x * x, 3); };
  EXPECT_NEAR(integrate_matsubara_like(f, s, 1.0).value, pi / 16.0, 1e-8);
  // Same integral with a badly chosen scale.
  EXPECT_NEAR(integrate_matsubara_like(f, s, 1e-3).value, pi / 16.0, 1e-8);
  EXPECT_NEAR(integrate_matsubara_like(f, s, 1e3).value, pi / 16.0, 1e-8);
}

TEST(Quadrature, ZeroIntegrand) {
  auto r = integrate_adaptive([](double) { return 0.0; }, 0.0, INFINITY);
  EXPECT_EQ(r.value, 0.0);
  auto m = integrate_matsubara_like([](double) { return 0.0; });
  EXPECT_EQ(m.value, 0.0);
}

TEST(Quadrature, ComplexIntegrand) {
  QuadSpec s;
  s.rel_tol = 1e-12;
  using cd = std::complex<double>;
  auto r = integrate_adaptive([](double x) { return std::exp(cd(-1.0, 1.0) * x); }, 0.0, INFINITY, s);
  EXPECT_NEAR(r.value.real(), 0.5, 1e-11);
  EXPECT_NEAR(r.value.imag(), 0.5, 1e-11);
}

TEST(Quadrature, NonConvergenceCarriesPartialValue) {
  QuadSpec s;
  s.rel_tol = 1e-14;
  s.max_evaluations = 300;
  auto f = [](double x) { return std::sin(1.0 / x); };
  try {
    integrate_adaptive(f, 0.0, 1.0, s);
    FAIL() << "expected QuadratureError";
  } catch (const QuadratureError& e) {
    // int_0^1 sin(1/x) dx = 0.504067...
    EXPECT_NEAR(e.partial_value(), 0.5040670619, 1e-2);
    EXPECT_GT(e.abs_error(), 0.0);
  }
}

TEST(Quadrature, SplitPointsAreNeverEvaluated) {
  const std::vector<double> splits{0.25, 1.0 / 3.0, 0.7};
  QuadSpec s;
  s.rel_tol = 1e-7;
  s.split_points = splits;
  bool touched = false;
  auto f = [&](double x) {
    for (double p : splits) {
      if (x == p) touched = true;
    }
    return 1.0 / std::sqrt(std::abs(x - 1.0 / 3.0));
  };
  auto r = integrate_adaptive(f, 0.0, 1.0, s);
  EXPECT_FALSE(touched);
  const double exact = 2.0 * std::sqrt(1.0 / 3.0) + 2.0 * std::sqrt(2.0 / 3.0);
  EXPECT_NEAR(r.value, exact, 1e-5);
}

TEST(Quadrature, RejectsBadTolerance) {
  QuadSpec s;
  s.rel_tol = 0.0;
  EXPECT_THROW(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, s), DomainError);
}

TEST(Quadrature, FixedRuleOracle) {
  EXPECT_NEAR(integrate_fixed([](double x) { return std::exp(-x); }, 0.0, 10.0, 50),
              1.0 - std::exp(-10.0), 1e-14);
}

// Halving rel_tol never increases the discrepancy against a much finer fixed grid.
TEST(Quadrature, RefinementIsMonotone) {
  struct Case {
    RealFn f;
    double a, b;
  };
  const std::vector<Case> cases{
      {[](double x) { return std::exp(-x); }, 0.0, 10.0},
      {[](double x) { return std::sin(x) * std::exp(-x / 10.0); }, 0.0, 50.0},
      {[](double x) { return x * x * x * std::exp(-2.0 * x); }, 0.0, 20.0},
      {[](double x) { return 1.0 / (1.0 + 25.0 * x * x); }, -1.0, 1.0},
  };
  for (const auto& c : cases) {
    const double oracle = integrate_fixed(c.f, c.a, c.b, 4000);
    double prev = INFINITY;
    for (double tol = 1e-3; tol > 1e-11; tol *= 0.5) {
      QuadSpec s;
      s.rel_tol = tol;
      const double d = std::abs(integrate_adaptive(c.f, c.a, c.b, s).value - oracle);
      EXPECT_LE(d, prev + 1e-14 * std::abs(oracle)) << "tol " << tol;
      prev = d;
    }
  }
}

TEST(Quadrature, CasimirPolderIntegrandIsCheap) {
  // Imaginary-axis integrand of the CP potential for silica above a perfect
  // conductor at 100 nm.
  const ScenarioConfig cfg = load_config(default_config_text(), {{"surface.model", "perfect_conductor"}});
  const double z = 100e-9;
  auto f = [&](double xi) {
    const Frequency fr = Frequency::imaginary(xi);
    QuadSpec s;
    s.rel_tol = 1e-10;
    return xi * xi * cfg.alpha(fr).real() *
           greens_scattering_component(cfg.surface, z, fr, GreensComponent::trace, GreensPart::real, s);
  };
  QuadSpec s;
  s.rel_tol = 1e-10;
  auto r = integrate_matsubara_like(f, s, constants::c / (2.0 * z));
  EXPECT_LT(r.evaluations, 50'000u);
  EXPECT_LT(r.value, 0.0);
}
