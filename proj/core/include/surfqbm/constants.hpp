#pragma once

#include <numbers>

namespace surfqbm {

// CODATA 2018, SI units.
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;   // J s
  static constexpr double c = 299792458.0;          // m/s
  static constexpr double eps0 = 8.8541878128e-12;  // F/m
  static constexpr double mu0 = 1.25663706212e-6;   // H/m
  static constexpr double kB = 1.380649e-23;        // J/K
  static constexpr double wien_b = 2.897771955e-3;  // m K
};

namespace constants {
inline constexpr double hbar = PhysicalConstants::hbar;
inline constexpr double c = PhysicalConstants::c;
inline constexpr double eps0 = PhysicalConstants::eps0;
inline constexpr double mu0 = PhysicalConstants::mu0;
inline constexpr double kB = PhysicalConstants::kB;
inline constexpr double wien_b = PhysicalConstants::wien_b;
inline constexpr double pi = std::numbers::pi;
inline constexpr double zeta9 = 1.0020083928260822;
}  // namespace constants

}  // namespace surfqbm
