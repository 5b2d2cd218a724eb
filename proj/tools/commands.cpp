#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "surfqbm/constants.hpp"
#include "surfqbm/envdec.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/potentials.hpp"
#include "surfqbm/qbm.hpp"
#include "surfqbm/version.hpp"

namespace surfqbm::cli {

namespace {

using Row = std::vector<std::optional<double>>;

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> out;
  if (n <= 0) return out;
  if (n == 1) return {lo};
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out.push_back(std::exp(a + (b - a) * i / (n - 1)));
  return out;
}

double first_antinode(const ScenarioConfig& cfg) {
  const auto br = default_bracket(cfg);
  return 0.5 * (br.first + br.second);
}

ScenarioConfig with_surface(ScenarioConfig cfg, const std::string& name) {
  cfg.surface = presets::surface(name);
  cfg.surface_model = name;
  return cfg;
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (const auto& c : table.comments) os << "# " << c << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << table.columns[i];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << format_number(*row[i]);
    }
    os << "\n";
  }
  for (const auto& f : table.footer) os << "# " << f << "\n";
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> provenance_comments(const ScenarioConfig& cfg, const std::string& command) {
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a64(serialize(cfg)));
  return {std::string("surfqbm ") + kVersion, "command: " + command,
          std::string("config_hash: fnv1a64:") + hash};
}

std::vector<Row> parallel_rows(std::size_t n, const std::function<Row(std::size_t)>& fn,
                               std::size_t threads) {
  std::vector<Row> rows(n);
  std::vector<std::exception_ptr> errors(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        rows[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

Table run_spectral_sweep(const ScenarioConfig& cfg, const RunContext& ctx) {
  cfg.validate();
  const auto zs = cfg.distances();
  Table t;
  t.comments = provenance_comments(cfg, "spectral-sweep");
  t.columns = {"z",          "z_tilde",     "j_full",       "j_approx",
               "gamma_full", "lambda_full", "gamma_approx", "lambda_approx"};
  t.rows = parallel_rows(zs.size(), [&](std::size_t i) -> Row {
    const double z = zs[i];
    const double w0 = cfg.omega0();
    const auto full = coefficients_sideband(cfg, z, SpectralMode::full);
    const auto appr = coefficients_sideband(cfg, z, SpectralMode::approx);
    return {z,
            cfg.z_tilde(z),
            spectral_density(cfg, z, w0, SpectralMode::full),
            spectral_density(cfg, z, w0, SpectralMode::approx),
            full.gamma,
            full.lambda,
            appr.gamma,
            appr.lambda};
  }, ctx.threads);
  return t;
}

Table run_fig2(const ScenarioConfig& cfg, const Fig2Options& opts, const RunContext& ctx) {
  cfg.validate();
  if (!(opts.z_tilde_min > 0.0) || !(opts.z_tilde_max > opts.z_tilde_min) || opts.points < 2) {
    throw ConfigError("fig2", "needs 0 < z_tilde_min < z_tilde_max and at least 2 points");
  }
  const auto grid = log_grid(opts.z_tilde_min, opts.z_tilde_max, opts.points);
  const ScenarioConfig free_cfg = with_surface(cfg, "vacuum");
  const ScenarioConfig pc_cfg = with_surface(cfg, "perfect_conductor");
  const ScenarioConfig gold_cfg = with_surface(cfg, "gold_drude");
  Table t;
  t.comments = provenance_comments(cfg, "fig2");
  t.comments.push_back("field at an antinode; Omega/omega0 -> 0 coefficients");
  t.columns = {"z_tilde",     "gamma_free", "gamma_pc",    "gamma_gold",
               "lambda_free", "lambda_pc",  "lambda_gold", "lambda_gold_nearfield"};
  t.rows = parallel_rows(grid.size(), [&](std::size_t i) -> Row {
    const double z = grid[i] / cfg.k0();
    const auto f = coefficients_approx(free_cfg, z, SpectralMode::approx);
    const auto p = coefficients_approx(pc_cfg, z, SpectralMode::approx);
    const auto g = coefficients_approx(gold_cfg, z, SpectralMode::approx);
    const auto nf = lambda_metal_nearfield(gold_cfg, z);
    return {grid[i], f.gamma, p.gamma, g.gamma, f.lambda, p.lambda, g.lambda, nf.lambda};
  }, ctx.threads);
  return t;
}

Table run_potential_scan(const ScenarioConfig& cfg, const RunContext& ctx) {
  cfg.validate();
  const auto zs = cfg.distances();
  Table t;
  t.comments = provenance_comments(cfg, "potential-scan");
  t.columns = {"z", "z_tilde", "u_trap", "u_cp", "u_dcp", "u_total", "gamma_sc"};
  t.rows = parallel_rows(zs.size(), [&](std::size_t i) -> Row {
    const auto b = potential_breakdown(cfg, zs[i]);
    return {zs[i], cfg.z_tilde(zs[i]), b.u_trap, b.u_cp, b.u_dcp, b.u_total,
            gamma_scatter(cfg, zs[i], ScatterMethod::full)};
  }, ctx.threads);
  return t;
}

Table run_equilibrium(const ScenarioConfig& cfg) {
  cfg.validate();
  const TrapSummary s = find_equilibrium(cfg);
  const auto co = coefficients_sideband(cfg, s.z0, SpectralMode::full);
  Table t;
  t.comments = provenance_comments(cfg, "equilibrium");
  t.columns = {"z0",          "z0_tilde", "omega_tr", "omega_cp", "omega_dcp",
               "omega_total", "stable",   "gamma",    "lambda"};
  t.rows.push_back({s.z0, cfg.z_tilde(s.z0), s.omega_tr, s.omega_cp, s.omega_dcp, s.omega_total,
                    s.stable ? 1.0 : 0.0, co.gamma, co.lambda});
  return t;
}

Table run_evolve(const ScenarioConfig& cfg, const EvolveOptions& opts) {
  cfg.validate();
  QbmParams p{cfg.mass(), cfg.trap_frequency, 0.0, 0.0};
  if (!opts.gamma || !opts.lambda) {
    const double z = opts.z.value_or(first_antinode(cfg));
    const auto co = coefficients_sideband(cfg, z, SpectralMode::full);
    p.gamma = co.gamma;
    p.lambda = co.lambda;
  }
  if (opts.gamma) p.gamma = *opts.gamma;
  if (opts.lambda) p.lambda = *opts.lambda;
  p.validate();
  if (!(p.omega > 0.0)) throw DomainError("evolve needs a trap frequency > 0");

  const double dt = opts.dt_periods / p.omega;
  const auto steps = static_cast<std::size_t>(std::llround(opts.periods / opts.dt_periods));
  const std::size_t rec = std::max<std::size_t>(opts.record_every, 1);
  const std::complex<double> alpha(opts.alpha_re, opts.alpha_im);

  const FockState f0 = FockState::coherent(opts.dim, alpha);
  const GaussianState g0 = f0.moments(p);
  const auto gt = evolve_gaussian(g0, p, dt, steps, rec);

  Table t;
  t.comments = provenance_comments(cfg, "evolve");
  char buf[160];
  std::snprintf(buf, sizeof buf, "Omega=%.10g Gamma=%.10g Lambda=%.10g dt=%.10g steps=%zu", p.omega,
                p.gamma, p.lambda, dt, steps);
  t.comments.push_back(buf);
  t.columns = {"t", "mean_z", "mean_p", "var_zz", "var_zp", "var_pp", "health"};
  std::optional<FockTrajectory> ft;
  if (opts.oracle) {
    FockOptions fo;
    fo.record_every = rec;
    ft = evolve_fock(f0, p, dt, steps, fo);
    for (const char* c : {"fock_mean_z", "fock_mean_p", "fock_var_zz", "fock_var_zp", "fock_var_pp",
                          "deviation"}) {
      t.columns.push_back(c);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < gt.states.size(); ++i) {
    const auto& s = gt.states[i];
    Row r{gt.times[i], s.mean_z, s.mean_p, s.var_zz, s.var_zp, s.var_pp, s.health()};
    if (ft) {
      const auto& m = ft->moments.at(i);
      const double dev = max_moment_deviation(s, m, p);
      worst = std::max(worst, dev);
      for (double v : {m.mean_z, m.mean_p, m.var_zz, m.var_zp, m.var_pp, dev}) r.push_back(v);
    }
    t.rows.push_back(std::move(r));
  }
  t.footer.push_back("health_violations=" + std::to_string(gt.health_violations));
  if (ft) {
    std::snprintf(buf, sizeof buf,
                  "max_moment_deviation=%.6e max_trace_drift=%.3e max_hermiticity_error=%.3e "
                  "min_eigenvalue=%.6e",
                  worst, ft->max_trace_drift, ft->max_hermiticity_error, ft->min_eigenvalue);
    t.footer.push_back(buf);
  }
  return t;
}

Table run_env_compare(const ScenarioConfig& cfg, const EnvCompareOptions& opts,
                      const RunContext& ctx) {
  cfg.validate();
  const auto zs = cfg.distances();
  auto surf = parallel_rows(zs.size(), [&](std::size_t i) -> Row {
    return {coefficients_sideband(cfg, zs[i], SpectralMode::full).lambda};
  }, ctx.threads);
  const std::size_t n =
      std::max({zs.size(), opts.pressures_mbar.size(), opts.temperatures.size()});
  Table t;
  t.comments = provenance_comments(cfg, "env-compare");
  t.columns = {"z", "lambda_surface", "pressure_mbar", "lambda_gas", "temperature", "lambda_bb"};
  for (std::size_t i = 0; i < n; ++i) {
    Row r(6);
    if (i < zs.size()) {
      r[0] = zs[i];
      r[1] = surf[i][0];
    }
    if (i < opts.pressures_mbar.size()) {
      GasSpec g = cfg.gas;
      g.pressure = opts.pressures_mbar[i] * 100.0;
      r[2] = opts.pressures_mbar[i];
      r[3] = lambda_gas(g, cfg.particle);
    }
    if (i < opts.temperatures.size()) {
      r[4] = opts.temperatures[i];
      r[5] = lambda_blackbody(opts.temperatures[i], cfg.particle);
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

double KernelCheckResult::rel_gamma() const {
  return std::abs(kernel.gamma - sideband.gamma) / std::abs(sideband.gamma);
}

double KernelCheckResult::rel_lambda() const {
  return std::abs(kernel.lambda - sideband.lambda) / std::abs(sideband.lambda);
}

KernelCheckResult kernel_check(const ScenarioConfig& base, const KernelCheckOptions& opts) {
  ScenarioConfig cfg = base;
  SpectralMode mode = SpectralMode::closed_form_free;
  switch (opts.spectrum) {
    case KernelSpectrum::free:
      cfg = with_surface(cfg, "vacuum");
      break;
    case KernelSpectrum::pc_nearfield:
      cfg = with_surface(cfg, "perfect_conductor");
      mode = SpectralMode::closed_form_pc_nearfield;
      break;
    case KernelSpectrum::metal_nearfield:
      mode = SpectralMode::closed_form_metal_nearfield;
      break;
  }
  if (opts.temperature) cfg.temperature = *opts.temperature;
  cfg.validate();
  const double w0 = cfg.omega0();
  const double z = opts.z.value_or(first_antinode(cfg));
  const double big_omega = opts.omega_ratio * w0;
  auto J = [cfg, z, mode](double w) { return spectral_density(cfg, z, w, mode); };

  BathKernels bk(J, w0, cfg.temperature);
  auto Jr = [&bk](double w) { return bk.regularized_spectrum(w); };
  KernelCheckResult out;
  // The kernels only use the half convention; the comparison follows it.
  out.sideband =
      sideband_coefficients(Jr, w0, big_omega, cfg.temperature, cfg.mass(), CothConvention::half);
  out.sideband_unregularized =
      sideband_coefficients(J, w0, big_omega, cfg.temperature, cfg.mass(), CothConvention::half);
  TimeWindow win;
  win.eta = opts.window_eta_ratio * w0;
  win.rel_tol = opts.window_rel_tol;
  out.kernel = coefficients_from_kernels(bk, big_omega, cfg.mass(), win);
  out.cutoff = bk.cutoff();
  out.omega_max = bk.omega_max();
  return out;
}

Table run_kernel_check(const ScenarioConfig& cfg, const KernelCheckOptions& opts) {
  const auto r = kernel_check(cfg, opts);
  Table t;
  t.comments = provenance_comments(cfg, "kernel-check");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "Omega/omega0=%.6g cutoff/omega0=%.6g omega_max/omega0=%.6g eta/omega0=%.6g",
                opts.omega_ratio, r.cutoff / cfg.omega0(), r.omega_max / cfg.omega0(),
                opts.window_eta_ratio);
  t.comments.push_back(buf);
  t.columns = {"gamma_sideband", "lambda_sideband", "gamma_sideband_unregularized",
               "lambda_sideband_unregularized", "gamma_kernel", "lambda_kernel",
               "rel_gamma", "rel_lambda"};
  t.rows.push_back({r.sideband.gamma, r.sideband.lambda, r.sideband_unregularized.gamma,
                    r.sideband_unregularized.lambda, r.kernel.gamma, r.kernel.lambda,
                    r.rel_gamma(), r.rel_lambda()});
  return t;
}

}  // namespace surfqbm::cli
