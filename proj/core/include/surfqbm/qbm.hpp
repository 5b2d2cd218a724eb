#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace surfqbm {

// Coefficients of d rho/dt = -i/hbar [H, rho] - i Gamma/hbar [z, {p, rho}] - Lambda [z, [z, rho]]
struct QbmParams {
  double mass = 0.0;    // kg
  double omega = 0.0;   // rad/s, renormalized trap frequency
  double gamma = 0.0;   // 1/s
  double lambda = 0.0;  // Hz/m^2

  double z_zpf() const;  // sqrt(hbar / 2 M Omega)
  double p_zpf() const;  // hbar / (2 z_zpf)
  void validate() const;
};

struct GaussianState {
  double mean_z = 0.0;  // m
  double mean_p = 0.0;  // kg m/s
  double var_zz = 0.0;  // m^2
  double var_zp = 0.0;  // kg m^2/s, symmetrized
  double var_pp = 0.0;  // kg^2 m^2/s^2

  // var_zz var_pp - var_zp^2; >= hbar^2/4 for a physical state.
  double health() const { return var_zz * var_pp - var_zp * var_zp; }
  double energy(const QbmParams& p) const;

  static GaussianState ground(const QbmParams& p);
};

struct GaussianTrajectory {
  std::vector<double> times;
  std::vector<GaussianState> states;
  // Steps where health() dipped below hbar^2/4 (logged, not fatal).
  std::size_t health_violations = 0;
};

// Closed moment equations, fixed-step RK4. Requires dt max(Omega, Gamma) < 0.1.
// Records every `record_every` steps plus the initial and final state.
GaussianTrajectory evolve_gaussian(const GaussianState& state, const QbmParams& params, double dt,
                                   std::size_t steps, std::size_t record_every = 1);

// Truncated number-basis density matrix of the Omega oscillator.
class FockState {
 public:
  explicit FockState(Eigen::MatrixXcd rho);

  static FockState ground(int dim);
  static FockState thermal(int dim, double mean_occupation);
  static FockState coherent(int dim, std::complex<double> alpha);
  // (|alpha> + sign |-alpha>) / norm
  static FockState cat(int dim, std::complex<double> alpha, int sign = +1);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& matrix() { return rho_; }

  std::complex<double> trace() const { return rho_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // Population of the top 10% of levels.
  double top_population() const;
  double parity() const;
  // <a| rho |b> between coherent states; tracks cat-state coherence.
  std::complex<double> coherent_element(std::complex<double> a, std::complex<double> b) const;
  GaussianState moments(const QbmParams& p) const;

 private:
  Eigen::MatrixXcd rho_;
};

struct FockTrajectory {
  std::vector<double> times;
  std::vector<GaussianState> moments;
  std::vector<double> parity;
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;
  // Most negative eigenvalue seen at the monitored steps (Born-Markov artifact).
  double min_eigenvalue = 0.0;
  FockState final_state;
};

struct FockOptions {
  std::size_t record_every = 1;
  std::size_t monitor_every = 50;   // eigenvalue / truncation checks
  double truncation_limit = 1e-6;   // allowed population of the top 10% of levels
};

// RK4 on the truncated generator. Throws TruncationError when the guard trips,
// DomainError when dt (Omega (d-1) + 2 Gamma d + 8 Lambda z_zpf^2 d) >= 2.5.
FockTrajectory evolve_fock(const FockState& state, const QbmParams& params, double dt,
                           std::size_t steps, const FockOptions& options = {});

// Largest moment discrepancy, relative to max(|value|, zero-point scale):
// means against z_zpf / p_zpf, variances against their squares and z_zpf p_zpf.
double max_moment_deviation(const GaussianState& a, const GaussianState& b, const QbmParams& p);

// Position-localization dephasing rate Lambda dz^2, 1/s.
double coherence_decay_rate(double delta_z, double lambda);

}  // namespace surfqbm
