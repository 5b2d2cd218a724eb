#include "surfqbm/kernels.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "surfqbm/constants.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/quadrature.hpp"

namespace surfqbm {

namespace {
constexpr double pi = std::numbers::pi;
using constants::hbar;

double noise_coth(double w, double T) {
  return T == 0.0 ? 1.0 : coth_factor(w, T, CothConvention::half);
}
}  // namespace

BathKernels::BathKernels(Spectrum J, double carrier, double temperature, KernelOptions options)
    : J_(std::move(J)), carrier_(carrier), temperature_(temperature), options_(options) {
  if (carrier < 0.0) throw DomainError("carrier frequency must be >= 0");
  if (temperature < 0.0) throw DomainError("temperature must be >= 0");
  const double scale = std::max(carrier, constants::kB * temperature / hbar);
  if (options_.cutoff > 0.0) {
    cutoff_ = options_.cutoff;
  } else {
    if (!(scale > 0.0)) throw DomainError("kernel cutoff needs a carrier or a temperature");
    cutoff_ = 20.0 * scale;
  }
  omega_max_ = std::isfinite(cutoff_) ? cutoff_ : 20.0 * scale;
  if (!(omega_max_ > 0.0)) throw DomainError("kernel cutoff must be > 0");

  auto w = [&](double om) { return std::abs(regularized_spectrum(om)) * noise_coth(om, temperature_); };
  QuadSpec spec;
  spec.rel_tol = 1e-10;
  weight_ = integrate_adaptive(RealFn(w), 0.0, omega_max_, spec).value;
  for (int i = 0;; ++i) {
    const double tail = integrate_adaptive(RealFn(w), omega_max_, 2.0 * omega_max_, spec).value;
    if (tail <= options_.tail_tolerance * weight_) break;
    if (i >= options_.max_doublings) {
      throw DomainError("kernel frequency cutoff too low: spectral tail fraction " +
                        std::to_string(tail / weight_) + " at w_max = " + std::to_string(omega_max_));
    }
    weight_ += tail;
    omega_max_ *= 2.0;
  }
  if (!(weight_ > 0.0)) weight_ = 0.0;
}

double BathKernels::regularized_spectrum(double omega) const {
  const double j = J_(omega);
  if (!std::isfinite(cutoff_)) return j;
  const double r = omega / cutoff_;
  return j * std::exp(-r * r);
}

double BathKernels::inner(double tau, bool noise) const {
  auto f = [&](double w) {
    const double j = regularized_spectrum(w);
    return noise ? j * noise_coth(w, temperature_) * std::cos(w * tau) : j * std::sin(w * tau);
  };
  QuadSpec spec;
  spec.rel_tol = options_.rel_tol;
  spec.abs_tol = options_.abs_tol_weight * weight_;
  spec.max_evaluations = 20'000'000;
  if (tau > 0.0) {
    const double period = 2.0 * pi / tau;
    const double width = 4.0 * period;
    const int n = static_cast<int>(std::min(omega_max_ / width, 20000.0));
    for (int i = 1; i < n; ++i) spec.split_points.push_back(i * omega_max_ / n);
  }
  return integrate_adaptive(RealFn(f), 0.0, omega_max_, spec).value;
}

double BathKernels::dissipation(double tau) const {
  return 2.0 * hbar * std::cos(carrier_ * tau) * inner(std::abs(tau), false) * (tau < 0.0 ? -1.0 : 1.0);
}

double BathKernels::noise(double tau) const {
  return 2.0 * hbar * std::cos(carrier_ * tau) * inner(std::abs(tau), true);
}

KernelValues kernels(const ScenarioConfig& cfg, double z, double tau, KernelOptions options) {
  auto J = [cfg, z](double w) {
    return spectral_density(cfg, z, w, SpectralMode::approx, SpectralPart::total);
  };
  BathKernels k(J, cfg.omega0(), cfg.temperature, options);
  return {k.dissipation(tau), k.noise(tau)};
}

double kernel_transform(const BathKernels& k, KernelKind kind, double nu, const TimeWindow& window) {
  if (!(window.eta > 0.0)) throw DomainError("time window eta must be > 0");
  const double tau_max = window.span / window.eta;
  auto f = [&](double tau) {
    const double damp = std::exp(-window.eta * window.eta * tau * tau);
    if (kind == KernelKind::dissipation) return k.dissipation(tau) * std::sin(nu * tau) * damp;
    return k.noise(tau) * std::cos(nu * tau) * damp;
  };
  QuadSpec spec;
  spec.rel_tol = window.rel_tol;
  spec.max_evaluations = window.max_evaluations;
  // Geometric breakpoints resolve the fast initial decay and the slow tail.
  for (double t = 1.0 / k.omega_max(); t < tau_max; t *= 2.0) spec.split_points.push_back(t);
  return integrate_adaptive(RealFn(f), 0.0, tau_max, spec).value;
}

CoefficientPair coefficients_from_kernels(const BathKernels& k, double Omega, double mass,
                                          const TimeWindow& window) {
  if (!(Omega > 0.0)) throw DomainError("trap frequency must be > 0");
  if (!(mass > 0.0)) throw DomainError("mass must be > 0");
  CoefficientPair out;
  out.gamma = kernel_transform(k, KernelKind::dissipation, Omega, window) / (2.0 * hbar * mass * Omega);
  out.lambda = kernel_transform(k, KernelKind::noise, Omega, window) / (2.0 * hbar * hbar);
  return out;
}

}  // namespace surfqbm
