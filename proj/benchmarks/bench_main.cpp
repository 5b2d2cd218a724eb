#include <benchmark/benchmark.h>

#include <complex>

#include "surfqbm/config.hpp"
#include "surfqbm/diagnostics.hpp"
#include "surfqbm/greens.hpp"
#include "surfqbm/potentials.hpp"
#include "surfqbm/qbm.hpp"
#include "surfqbm/spectral.hpp"

using namespace surfqbm;

namespace {

const ScenarioConfig& gold() {
  static const ScenarioConfig cfg = derive_intensity_from_trap_frequency(default_config());
  return cfg;
}

QbmParams oscillator() {
  QbmParams p;
  p.mass = 3.13e-18;
  p.omega = 3e6;
  p.gamma = 0.1 * p.omega;
  p.lambda = 0.25 * p.gamma / (p.z_zpf() * p.z_zpf());
  return p;
}

// range(0) is k0 z in thousandths
void BM_RecoilIntegral(benchmark::State& st) {
  const auto& cfg = gold();
  const double z = st.range(0) * 1e-3 / cfg.k0();
  for (auto _ : st) {
    benchmark::DoNotOptimize(recoil_scattering(cfg.surface, z, cfg.omega0(), RecoilMethod::integral));
  }
}
BENCHMARK(BM_RecoilIntegral)->Arg(10)->Arg(1000)->Arg(10000);

void BM_CasimirPolder(benchmark::State& st) {
  const auto& cfg = gold();
  for (auto _ : st) benchmark::DoNotOptimize(u_cp(cfg, 200e-9));
}
BENCHMARK(BM_CasimirPolder)->Unit(benchmark::kMillisecond);

void BM_CoefficientsApprox(benchmark::State& st) {
  const auto& cfg = gold();
  for (auto _ : st) benchmark::DoNotOptimize(coefficients_approx(cfg, 0.05 / cfg.k0()));
}
BENCHMARK(BM_CoefficientsApprox);

void BM_FockSteps(benchmark::State& st) {
  const auto p = oscillator();
  const auto rho = FockState::coherent(static_cast<int>(st.range(0)), {1.0, 0.5});
  FockOptions o;
  o.record_every = 100;
  o.monitor_every = 100;
  for (auto _ : st) benchmark::DoNotOptimize(evolve_fock(rho, p, 0.002 / p.omega, 100, o));
  st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_FockSteps)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_GaussianSteps(benchmark::State& st) {
  const auto p = oscillator();
  const auto s = GaussianState::ground(p);
  // this bath pushes the ground state under the uncertainty floor; the warning is expected
  const auto prev = set_warning_handler([](const std::string&) {});
  for (auto _ : st) benchmark::DoNotOptimize(evolve_gaussian(s, p, 0.002 / p.omega, 1000, 1000));
  st.SetItemsProcessed(st.iterations() * 1000);
  set_warning_handler(prev);
}
BENCHMARK(BM_GaussianSteps);

}  // namespace

BENCHMARK_MAIN();
