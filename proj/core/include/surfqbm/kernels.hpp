#pragma once

#include "surfqbm/config.hpp"
#include "surfqbm/spectral.hpp"

namespace surfqbm {

struct KernelOptions {
  // Gaussian regularization J(w) exp(-(w/cutoff)^2). 0 selects
  // 20 max(carrier, kB T / hbar); +inf disables regularization.
  double cutoff = 0.0;
  // Stop doubling w_max once the next octave holds less than this fraction.
  double tail_tolerance = 1e-6;
  int max_doublings = 12;
  // Inner (frequency) quadrature tolerances; the absolute floor is relative
  // to the total spectral weight.
  double rel_tol = 1e-12;
  double abs_tol_weight = 1e-15;
};

// D(tau) = 2 hbar int dw J(w) sin(w tau) cos(w0 tau)
// N(tau) = 2 hbar int dw J(w) cos(w tau) cos(w0 tau) coth(hbar w / 2 kB T)
class BathKernels {
 public:
  // Throws DomainError("cutoff too low") when the spectral tail does not decay.
  BathKernels(Spectrum J, double carrier, double temperature, KernelOptions options = {});

  double dissipation(double tau) const;
  double noise(double tau) const;

  double regularized_spectrum(double omega) const;
  double cutoff() const { return cutoff_; }
  double omega_max() const { return omega_max_; }
  double carrier() const { return carrier_; }
  double temperature() const { return temperature_; }
  double spectral_weight() const { return weight_; }

 private:
  double inner(double tau, bool noise) const;

  Spectrum J_;
  double carrier_;
  double temperature_;
  KernelOptions options_;
  double cutoff_ = 0.0;
  double omega_max_ = 0.0;
  double weight_ = 0.0;
};

struct KernelValues {
  double dissipation = 0.0;
  double noise = 0.0;
};

// Kernels of the configured scenario at distance z (antinode spectral density).
KernelValues kernels(const ScenarioConfig& cfg, double z, double tau, KernelOptions options = {});

// Gaussian time window exp(-(eta tau)^2), integrated to tau_max = span / eta.
struct TimeWindow {
  double eta = 0.0;  // 1/s
  double span = 6.0;
  double rel_tol = 1e-6;
  std::size_t max_evaluations = 400'000;
};

enum class KernelKind { dissipation, noise };

// int_0^tau_max K(tau) trig(nu tau) exp(-(eta tau)^2) dtau, with sin for the
// dissipation kernel and cos for the noise kernel.
double kernel_transform(const BathKernels& k, KernelKind kind, double nu, const TimeWindow& window);

// Gamma = (1 / 2 hbar M Omega) int D(tau) sin(Omega tau) dtau
// Lambda = (1 / 2 hbar^2) int N(tau) cos(Omega tau) dtau
CoefficientPair coefficients_from_kernels(const BathKernels& k, double Omega, double mass,
                                          const TimeWindow& window);

}  // namespace surfqbm
