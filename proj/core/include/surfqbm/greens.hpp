#pragma once

#include <complex>

#include "surfqbm/materials.hpp"
#include "surfqbm/quadrature.hpp"

namespace surfqbm {

struct FresnelPair {
  std::complex<double> rp;
  std::complex<double> rs;
};

// Reflection coefficients for a nonmagnetic half-space, with
// kappa_m = sqrt(kappa^2 - (eps - 1) k^2) on the branch Re >= 0 (Im <= 0 when
// Re = 0). kappa is the perpendicular wavenumber: real and positive for
// evanescent waves, -i sqrt(k^2 - k_par^2) for propagating ones.
FresnelPair fresnel(std::complex<double> eps, std::complex<double> kappa, double k_squared);
FresnelPair fresnel(const SurfaceModel& surface, std::complex<double> kappa, Frequency freq);

// Lowest-order expansion in k/kappa (non-retarded regime).
FresnelPair fresnel_nearfield(std::complex<double> eps, std::complex<double> kappa, double k_squared);
FresnelPair fresnel_nearfield(const SurfaceModel& surface, std::complex<double> kappa, Frequency freq);

// Diagonal of a coincident-point Green's tensor, units 1/m.
struct GreensDiag {
  std::complex<double> xx;
  std::complex<double> yy;
  std::complex<double> zz;
  std::complex<double> trace() const { return xx + yy + zz; }
};

// Imaginary part of the free-space tensor at coincident points, omega/(6 pi c)
// on each axis. The real part diverges there and is not represented.
GreensDiag greens_free_im_diag(double omega);

enum class GreensComponent {
  xx,         // G_xx
  zz,         // G_zz
  trace,      // 2 G_xx + G_zz
  xx_dz1,     // d/dz1 G_xx(z1, z2) at z1 = z2 = z
  xx_recoil,  // d/dz1 d/dz2 G_xx(z1, z2) at z1 = z2 = z
};

enum class GreensPart { real, imag };

// One real number out of the planar scattering tensor at height z:
// (1/8 pi) int dk k/kappa exp(-2 kappa z) [...], split at the light line into a
// propagating piece and an evanescent tail (integrated in u = 2 kappa z).
// On the imaginary axis the tensor is real and GreensPart::imag gives 0.
double greens_scattering_component(const SurfaceModel& surface, double z, Frequency freq,
                                   GreensComponent component, GreensPart part,
                                   const QuadSpec& spec = {});

GreensDiag greens_scattering_diag(const SurfaceModel& surface, double z, Frequency freq,
                                  const QuadSpec& spec = {});

// Im d/dz1 d/dz2 G_free,xx at coincidence: omega^3 / (15 pi c^3), units 1/m^3.
double recoil_free(double omega);

enum class RecoilMethod {
  integral,             // k_par quadrature, any surface
  pc_closed_form,       // perfect conductor only
  nearfield_asymptote,  // finite-eps surfaces, kz << 1
};

// Scattering part of the recoil tensor, Im d/dz1 d/dz2 G_sc,xx, units 1/m^3.
// nearfield_asymptote uses the dimensionless distance omega z / c.
double recoil_scattering(const SurfaceModel& surface, double z, double omega, RecoilMethod method,
                         const QuadSpec& spec = {});

// Perfect-conductor closed form; a power series is used for kz < 0.5 where the
// closed form cancels catastrophically.
double recoil_pc_closed_form(double omega, double z);

}  // namespace surfqbm
