#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "surfqbm/config.hpp"
#include "surfqbm/kernels.hpp"
#include "surfqbm/spectral.hpp"

namespace surfqbm::cli {

// A CSV table: '#' comment lines, one header row, numeric cells (empty when
// absent), then trailing '#' footer lines.
struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
  std::vector<std::string> footer;
};

void write_csv(std::ostream& os, const Table& table);

std::uint64_t fnv1a64(const std::string& text);
// "# surfqbm <version>", "# command: ...", "# config_hash: ..."
std::vector<std::string> provenance_comments(const ScenarioConfig& cfg, const std::string& command);

// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency) and
// returns results in index order. The first exception by index is rethrown.
std::vector<std::vector<std::optional<double>>> parallel_rows(
    std::size_t n, const std::function<std::vector<std::optional<double>>(std::size_t)>& fn,
    std::size_t threads = 0);

struct RunContext {
  std::size_t threads = 0;
};

// z, z_tilde, j_full, j_approx, gamma_full, lambda_full, gamma_approx, lambda_approx
Table run_spectral_sweep(const ScenarioConfig& cfg, const RunContext& ctx = {});

struct Fig2Options {
  double z_tilde_min = 1e-2;
  double z_tilde_max = 10.0;
  int points = 61;
};
// z_tilde, gamma_free, gamma_pc, gamma_gold, lambda_free, lambda_pc, lambda_gold,
// lambda_gold_nearfield. Field at an antinode; gold is the gold_drude preset.
Table run_fig2(const ScenarioConfig& cfg, const Fig2Options& opts = {}, const RunContext& ctx = {});

// z, z_tilde, u_trap, u_cp, u_dcp, u_total, gamma_sc
Table run_potential_scan(const ScenarioConfig& cfg, const RunContext& ctx = {});

// One row: z0, omega_tr, omega_cp, omega_dcp, omega_total, stable, gamma, lambda.
Table run_equilibrium(const ScenarioConfig& cfg);

struct EvolveOptions {
  std::optional<double> gamma;   // 1/s; computed from the config at z when absent
  std::optional<double> lambda;  // Hz/m^2
  std::optional<double> z;       // m; default first antinode
  double periods = 10.0;         // t_end = periods / Omega
  double dt_periods = 0.002;     // dt = dt_periods / Omega
  std::size_t record_every = 50;
  double alpha_re = 1.0;         // initial coherent amplitude
  double alpha_im = 0.0;
  bool oracle = false;
  int dim = 60;
};
// t, mean_z, mean_p, var_zz, var_zp, var_pp, health [, fock_* columns, deviation]
Table run_evolve(const ScenarioConfig& cfg, const EvolveOptions& opts);

struct EnvCompareOptions {
  std::vector<double> pressures_mbar{1.0, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6,
                                     1e-7, 1e-8, 1e-9, 1e-10, 1e-11};
  std::vector<double> temperatures{1.0, 3.0, 10.0, 30.0, 100.0};
};
// z, lambda_surface, pressure_mbar, lambda_gas, temperature, lambda_bb; shorter
// grids leave their cells empty.
Table run_env_compare(const ScenarioConfig& cfg, const EnvCompareOptions& opts,
                      const RunContext& ctx = {});

enum class KernelSpectrum { free, pc_nearfield, metal_nearfield };

struct KernelCheckOptions {
  KernelSpectrum spectrum = KernelSpectrum::free;
  std::optional<double> z;              // m; needed for near-field spectra
  double omega_ratio = 0.2;             // Omega / omega0
  std::optional<double> temperature;    // K; config temperature when absent
  double window_eta_ratio = 0.01;       // eta / omega0
  double window_rel_tol = 1e-4;
};

struct KernelCheckResult {
  CoefficientPair sideband;              // regularized spectrum
  CoefficientPair sideband_unregularized;
  CoefficientPair kernel;
  double cutoff = 0.0;
  double omega_max = 0.0;
  double rel_gamma() const;
  double rel_lambda() const;
};

KernelCheckResult kernel_check(const ScenarioConfig& cfg, const KernelCheckOptions& opts);
Table run_kernel_check(const ScenarioConfig& cfg, const KernelCheckOptions& opts);

}  // namespace surfqbm::cli
