#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "selfbind/constants.hpp"

namespace selfbind {

// ---------------------------------------------------------------------------
// Unit conversions. Everything inside the library is SI; polarizabilities are
// quoted as Gaussian-convention volumes (alpha_v = alpha_SI / (4 pi eps0)).
// ---------------------------------------------------------------------------

template <typename Scalar>
constexpr Scalar polarizability_si(Scalar volume_m3) {
  return Scalar(4.0 * constants::pi * constants::eps0) * volume_m3;
}

template <typename Scalar>
constexpr Scalar polarizability_volume(Scalar alpha_si) {
  return alpha_si / Scalar(4.0 * constants::pi * constants::eps0);
}

enum class IntensityUnit { WattPerM2, WattPerCm2, MilliWattPerCm2 };

/// Accepts "W/m2", "W/cm2", "mW/cm2" (a "^" before the exponent is tolerated).
IntensityUnit parse_intensity_unit(std::string_view tag);
std::string_view to_string(IntensityUnit unit);

/// Converts an intensity to W/m^2. Throws std::invalid_argument for value < 0.
double intensity_si(double value, IntensityUnit unit);
double intensity_si(double value, std::string_view unit_tag);
double intensity_from_si(double watt_per_m2, IntensityUnit unit);

// ---------------------------------------------------------------------------
// Species
// ---------------------------------------------------------------------------

/// Near-resonant operating point used for the moderate-detuning numbers.
struct DetunedContext {
  double transition_wavelength = 0.0;  // m
  double detuning = 0.0;               // rad/s, signed (red < 0 is allowed)
  double linewidth = 0.0;              // rad/s
  double dipole_matrix_element = 0.0;  // C m
  double polarizability_volume = 0.0;  // m^3 at this detuning

  /// |delta| >= factor * gamma, the far-detuned condition for the saturation formula.
  bool far_detuned(double factor = 10.0) const;
};

struct AtomSpecies {
  std::string name;
  double mass = 0.0;                   // kg
  double scattering_length = 0.0;      // m, any sign
  double polarizability_volume = 0.0;  // m^3, static
  std::optional<DetunedContext> detuned;

  /// Contact coupling g = 4 pi a hbar^2 / m.
  double contact_coupling() const;

  /// SI polarizability, static or at the detuned operating point.
  /// Throws std::invalid_argument if the detuned value is requested but absent.
  double polarizability(bool use_detuned) const;

  /// Throws std::invalid_argument when mass or polarizability are not positive.
  void validate() const;
};

/// Built-in species ("Na", "Rb87"). The Na/Rb static polarizabilities and
/// scattering lengths are standard literature values; they were picked so that
/// the static thresholds land on 5.65e9 W/cm^2 (Na) and 8.19e8 W/cm^2 (Rb).
const std::vector<AtomSpecies>& builtin_species();

/// Parses a species file. Format, one `key = value` per line, '#' comments:
///
///   name = K39
///   mass_kg = 6.47e-26
///   a_m = 1.0e-9
///   alpha_v_m3 = 42.9e-30
///   detuned.wavelength_m = 767e-9      # optional block, all five keys
///   detuned.detuning_rad_s = -1.0e10
///   detuned.linewidth_rad_s = 3.8e7
///   detuned.dipole_Cm = 2.1e-29
///   detuned.alpha_v_m3 = 1e-24
///
/// A new record starts at each `name` key. Errors name the offending line.
std::vector<AtomSpecies> parse_species_file(std::istream& in);
std::vector<AtomSpecies> load_species_file(const std::string& path);

/// Looks `name` up among `extra` first, then the built-ins.
/// Throws std::invalid_argument for unknown names.
AtomSpecies catalog_lookup(std::string_view name, const std::vector<AtomSpecies>& extra = {});

}  // namespace selfbind
