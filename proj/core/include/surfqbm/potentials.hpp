#pragma once

#include <functional>
#include <utility>

#include "surfqbm/config.hpp"
#include "surfqbm/quadrature.hpp"

namespace surfqbm {

// Where the drive field is evaluated: on the standing-wave profile at z, or at
// an antinode (|E| = E_max, dE/dz = 0), which is what the closed forms assume.
enum class FieldPolicy { standing_wave, at_antinode };

double field_amplitude_at(const ScenarioConfig& cfg, double z, FieldPolicy policy);
double field_derivative_at(const ScenarioConfig& cfg, double z, FieldPolicy policy);

// Tight tolerances: potentials are differentiated numerically.
QuadSpec potential_quad_spec();

struct PotentialBreakdown {
  double z = 0.0;       // m
  double u_trap = 0.0;  // J
  double u_cp = 0.0;    // J
  double u_dcp = 0.0;   // J
  double u_total = 0.0; // J
};

// -alpha(w0) |E(z)|^2 / 4
double u_trap(const ScenarioConfig& cfg, double z);
// Casimir-Polder: imaginary-axis term plus a thermal real-axis term (dropped at T = 0).
double u_cp(const ScenarioConfig& cfg, double z, const QuadSpec& spec = potential_quad_spec());
// Drive-induced CP: -(mu0 w0^2 alpha^2 / 2)(2 n + 1) E(z)^2 Re G_sc,xx(z, w0).
double u_dcp(const ScenarioConfig& cfg, double z, const QuadSpec& spec = potential_quad_spec());
PotentialBreakdown potential_breakdown(const ScenarioConfig& cfg, double z,
                                       const QuadSpec& spec = potential_quad_spec());

enum class ScatterMethod {
  full,       // (mu0 w0^2 alpha^2 / hbar)(2 n + 1) E Im G_sc,xx E
  nearfield,  // (3 / 8 (k0 z)^3) Im[(eps - 1)/(eps + 1)] gamma_0(w0)
};

// Surface-modified photon scattering rate, 1/s.
double gamma_scatter(const ScenarioConfig& cfg, double z, ScatterMethod method,
                     FieldPolicy policy = FieldPolicy::standing_wave,
                     const QuadSpec& spec = potential_quad_spec());

struct PotentialTerms {
  bool cp = true;
  bool dcp = true;
};

struct TrapSummary {
  double z0 = 0.0;            // m
  double omega_tr = 0.0;      // rad/s
  double omega_cp_sq = 0.0;   // signed, (rad/s)^2
  double omega_dcp_sq = 0.0;  // signed, (rad/s)^2
  double omega_cp = 0.0;      // sign(omega_cp_sq) sqrt|omega_cp_sq|
  double omega_dcp = 0.0;
  double omega_total = 0.0;   // sqrt of the summed squares, 0 when unstable
  bool stable = true;
};

// First-derivative / second-derivative central differences with one Richardson
// step. h <= 0 selects max(1e-4 z, 1e-12 m).
double derivative(const std::function<double(double)>& f, double z, double h = 0.0);
double second_derivative(const std::function<double(double)>& f, double z, double h = 0.0);

// Default bracket: first antinode +- 0.2 lambda, i.e. (0.1, 0.9) lambda/2 for a
// node at the surface.
std::pair<double, double> default_bracket(const ScenarioConfig& cfg);

// Root of dU_total/dz inside the bracket. If the end slopes do not straddle a
// minimum the bracket is scanned on 48 panels and the minimum-type crossing
// nearest the antinode is used. Throws ModelError("trap lost") when there is none.
TrapSummary find_equilibrium(const ScenarioConfig& cfg, std::pair<double, double> bracket,
                             PotentialTerms terms = {}, const QuadSpec& spec = potential_quad_spec());
TrapSummary find_equilibrium(const ScenarioConfig& cfg, PotentialTerms terms = {});

}  // namespace surfqbm
