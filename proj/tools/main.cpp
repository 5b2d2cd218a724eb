#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "surfqbm/config.hpp"
#include "surfqbm/diagnostics.hpp"
#include "surfqbm/error.hpp"
#include "surfqbm/version.hpp"

namespace {

using namespace surfqbm;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (item.find_first_not_of(" \t", pos) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": not a number: '" + item + "'");
    }
  }
  return out;
}

// Module a failure is reported under.
std::string module_of(const std::string& command) {
  if (command == "fig2" || command == "spectral-sweep" || command == "kernel-check") return "spectral";
  if (command == "potential-scan" || command == "equilibrium") return "potentials";
  if (command == "evolve") return "qbm";
  if (command == "env-compare") return "envdec";
  return "cli";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface-modified dissipation and decoherence of a levitated nanoparticle"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path = "-";
  std::vector<std::string> overrides;
  bool derive_intensity = false;
  bool oracle = false;
  std::size_t threads = 0;
  app.add_option("--config", config_path, "Scenario INI file");
  app.add_option("--out", out_path, "Output CSV path ('-' for stdout)");
  app.add_option("--override", overrides, "Dotted key override, e.g. drive.intensity=5e8")
      ->take_all();
  app.add_flag("--derive-intensity-from-omega", derive_intensity,
               "Set drive.intensity from environment.trap_frequency");
  app.add_flag("--oracle", oracle, "evolve: add Fock-basis comparison columns");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* sweep = app.add_subcommand("spectral-sweep", "J and Gamma/Lambda over the distance grid");
  auto* fig2 = app.add_subcommand("fig2", "Dissipation/decoherence curves for free space, PC, gold");
  cli::Fig2Options fig2_opts;
  fig2->add_option("--points", fig2_opts.points, "Grid points")->check(CLI::Range(2, 100000));
  fig2->add_option("--zt-min", fig2_opts.z_tilde_min, "Smallest k0 z");
  fig2->add_option("--zt-max", fig2_opts.z_tilde_max, "Largest k0 z");
  auto* scan = app.add_subcommand("potential-scan", "Potential terms over the distance grid");
  auto* equil = app.add_subcommand("equilibrium", "Trap minimum and frequency contributions");

  auto* evolve = app.add_subcommand("evolve", "Gaussian moment trajectory");
  cli::EvolveOptions ev;
  double gamma = 0.0, lambda = 0.0, z_ev = 0.0;
  auto* g_opt = evolve->add_option("--gamma", gamma, "Gamma, 1/s");
  auto* l_opt = evolve->add_option("--lambda", lambda, "Lambda, Hz/m^2");
  auto* z_opt = evolve->add_option("--z", z_ev, "Distance for the coefficients, m");
  evolve->add_option("--periods", ev.periods, "Duration in units of 1/Omega");
  evolve->add_option("--dt", ev.dt_periods, "Step in units of 1/Omega");
  evolve->add_option("--record-every", ev.record_every, "Steps between rows");
  evolve->add_option("--alpha", ev.alpha_re, "Initial coherent amplitude (real)");
  evolve->add_option("--dim", ev.dim, "Fock dimension for --oracle")->check(CLI::Range(4, 400));

  auto* env = app.add_subcommand("env-compare", "Surface vs gas vs blackbody decoherence");
  std::string pressures, temperatures;
  auto* p_opt = env->add_option("--pressures", pressures, "Comma list, mbar");
  auto* t_opt = env->add_option("--temperatures", temperatures, "Comma list, K");

  auto* kc = app.add_subcommand("kernel-check", "Time-domain kernels vs sideband coefficients");
  cli::KernelCheckOptions kc_opts;
  std::string spectrum = "free";
  double kc_z = 0.0, kc_t = 0.0;
  kc->add_option("--spectrum", spectrum, "free | pc | metal")
      ->check(CLI::IsMember({"free", "pc", "metal"}));
  auto* kcz_opt = kc->add_option("--z", kc_z, "Distance, m");
  kc->add_option("--omega-ratio", kc_opts.omega_ratio, "Omega / omega0");
  auto* kct_opt = kc->add_option("--temperature", kc_t, "Bath temperature, K");
  kc->add_option("--eta-ratio", kc_opts.window_eta_ratio, "Time window eta / omega0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();

  try {
    if (config_path.empty()) throw UsageError("--config is required");
    Overrides ov;
    for (const auto& o : overrides) ov.push_back(parse_override(o));
    ScenarioConfig cfg = load_config_file(config_path, ov);
    if (derive_intensity) cfg = derive_intensity_from_trap_frequency(cfg);

    cli::RunContext ctx{threads};
    cli::Table table;
    if (*sweep) {
      table = cli::run_spectral_sweep(cfg, ctx);
    } else if (*fig2) {
      table = cli::run_fig2(cfg, fig2_opts, ctx);
    } else if (*scan) {
      table = cli::run_potential_scan(cfg, ctx);
    } else if (*equil) {
      table = cli::run_equilibrium(cfg);
    } else if (*evolve) {
      if (*g_opt) ev.gamma = gamma;
      if (*l_opt) ev.lambda = lambda;
      if (*z_opt) ev.z = z_ev;
      ev.oracle = oracle;
      table = cli::run_evolve(cfg, ev);
    } else if (*env) {
      cli::EnvCompareOptions eo;
      if (*p_opt) eo.pressures_mbar = parse_list(pressures, "--pressures");
      if (*t_opt) eo.temperatures = parse_list(temperatures, "--temperatures");
      table = cli::run_env_compare(cfg, eo, ctx);
    } else if (*kc) {
      if (spectrum == "pc") kc_opts.spectrum = cli::KernelSpectrum::pc_nearfield;
      if (spectrum == "metal") kc_opts.spectrum = cli::KernelSpectrum::metal_nearfield;
      if (*kcz_opt) kc_opts.z = kc_z;
      if (*kct_opt) kc_opts.temperature = kc_t;
      table = cli::run_kernel_check(cfg, kc_opts);
    }

    if (out_path == "-") {
      cli::write_csv(std::cout, table);
    } else {
      std::ofstream os(out_path, std::ios::binary);
      if (!os) throw UsageError("cannot open output file " + out_path);
      cli::write_csv(os, table);
      if (!os) throw UsageError("write failed: " + out_path);
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "surfqbm: usage: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "surfqbm: [config] " << e.what() << "\n";
    return 2;
  } catch (const QuadratureError& e) {
    std::cerr << "surfqbm: [quad] " << e.what() << " (partial " << e.partial_value() << ")\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "surfqbm: [" << module_of(command) << "] " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "surfqbm: " << e.what() << "\n";
    return 1;
  }
}
