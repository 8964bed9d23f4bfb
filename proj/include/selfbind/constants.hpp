#pragma once

#include <numbers>

namespace selfbind {

/// CODATA 2018 exact/recommended values, SI units.
struct PhysicalConstants {
  static constexpr double h = 6.62607015e-34;             // J s (exact)
  static constexpr double hbar = h / (2.0 * std::numbers::pi);
  static constexpr double c = 299792458.0;                // m/s (exact)
  static constexpr double eps0 = 8.8541878128e-12;        // F/m
};

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double hbar = PhysicalConstants::hbar;
inline constexpr double h = PhysicalConstants::h;
inline constexpr double c = PhysicalConstants::c;
inline constexpr double eps0 = PhysicalConstants::eps0;
}  // namespace constants

}  // namespace selfbind
