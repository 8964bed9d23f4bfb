#pragma once

#include <array>
#include <cmath>
#include <string_view>
#include <type_traits>
#include <vector>

#include "selfbind/constants.hpp"
#include "selfbind/species.hpp"

namespace selfbind {

/// Laser drive seen by the condensate. All fields are derived consistently by
/// make_interaction / interaction_at_ratio; construct through those.
struct InteractionParams {
  double intensity = 0.0;          // total intensity of all beams, W/m^2
  double wavelength = 0.0;         // lambda_L, m
  double polarizability = 0.0;     // alpha_SI used for this drive, C m^2 / V
  double coupling = 0.0;           // u, J m
  double threshold = 0.0;          // I0 for the same species and polarizability, W/m^2 (0 if a <= 0)
  double ratio = 0.0;              // I / I0 (0 if the threshold is undefined)
  double wavevector = 0.0;         // q = 2 pi / lambda_L, 1/m
  bool detuned = false;
};

/// u = (11 pi/15) I alpha^2 / (c eps0^2 lambda^2).
double coupling_u(double intensity, const AtomSpecies& species, double wavelength,
                  bool use_detuned);

/// The coupling at the self-binding threshold, written without the
/// polarizability: u0 = (176 pi^2/35) hbar^2 a / (m lambda^2).
double coupling_at_threshold(const AtomSpecies& species, double wavelength);

InteractionParams make_interaction(const AtomSpecies& species, double wavelength, double intensity,
                                   bool use_detuned);
InteractionParams interaction_at_ratio(const AtomSpecies& species, double wavelength, double ratio,
                                       bool use_detuned);

// ---------------------------------------------------------------------------
// Isotropic laser-induced pair potential in reduced form:
//   U(r) = (u / lambda) * reduced_potential(r / lambda).
// The bracket of five oscillating terms cancels down from 1/y^5 to 1/y
// (y = 2 pi r/lambda), so below y = kSeriesSwitch a Taylor series is used.
// ---------------------------------------------------------------------------

namespace kernel {

inline constexpr double kPrefactor = 15.0 * constants::pi / 11.0;
inline constexpr double kSeriesSwitch = 0.05;  // in y = 2 pi r/lambda
inline constexpr int kSeriesOrder = 8;

// y * bracket(y) = sum_k c_k y^(2k).
inline constexpr std::array<double, kSeriesOrder> kSeries = {
    22.0 / 15.0,           -92.0 / 105.0,          172.0 / 945.0,
    -568.0 / 31185.0,      428.0 / 405405.0,       -1208.0 / 30405375.0,
    232.0 / 221524875.0,   -4208.0 / 206239658625.0};

template <typename Scalar>
Scalar bracket_direct(Scalar y) {
  using std::cos;
  using std::sin;
  const Scalar s = sin(2 * y), c = cos(2 * y);
  const Scalar y2 = y * y;
  // sin/y^2 + 2cos/y^3 - 5 sin/y^4 - 6 cos/y^5 + 3 sin/y^6, grouped over y^6
  return (s * (y2 * y2 - 5 * y2 + 3) + c * y * (2 * y2 - 6)) / (y2 * y2 * y2);
}

template <typename Scalar>
Scalar bracket_series(Scalar y) {
  const Scalar y2 = y * y;
  Scalar acc = Scalar(kSeries[kSeriesOrder - 1]);
  for (int k = kSeriesOrder - 2; k >= 0; --k) acc = acc * y2 + Scalar(kSeries[k]);
  return acc / y;
}

}  // namespace kernel

/// U * lambda / u as a function of r~ = r / lambda, direct formula only.
/// Loses ~y^-4 relative digits near the origin; kept for tests.
template <typename Scalar>
Scalar reduced_potential_direct(Scalar rt) {
  return -Scalar(kernel::kPrefactor) * kernel::bracket_direct(Scalar(2 * constants::pi) * rt);
}

template <typename Scalar>
Scalar reduced_potential_series(Scalar rt) {
  return -Scalar(kernel::kPrefactor) * kernel::bracket_series(Scalar(2 * constants::pi) * rt);
}

/// U * lambda / u with the near-zone series branch. rt must be > 0.
/// For y < 1 the direct branch runs in extended precision.
template <typename Scalar>
Scalar reduced_potential(Scalar rt) {
  const Scalar y = Scalar(2 * constants::pi) * rt;
  if (y < Scalar(kernel::kSeriesSwitch)) return -Scalar(kernel::kPrefactor) * kernel::bracket_series(y);
  if constexpr (sizeof(Scalar) < sizeof(long double)) {
    if (y < Scalar(1)) {
      return Scalar(-static_cast<long double>(kernel::kPrefactor) *
                    kernel::bracket_direct(static_cast<long double>(y)));
    }
  }
  return -Scalar(kernel::kPrefactor) * kernel::bracket_direct(y);
}

/// r * U(r) / u in reduced units; finite (-1) at the origin.
template <typename Scalar>
Scalar reduced_potential_times_r(Scalar rt) {
  if (rt == Scalar(0)) return Scalar(-1);
  return rt * reduced_potential(rt);
}

/// Pair potential in J at reduced separation rt. Throws for rt <= 0.
double u_iso(double rt, double coupling, double wavelength);

/// -u / r exactly. Throws for r <= 0.
double near_zone_limit(double r, double coupling);

/// Smallest rt where U turns from attractive to repulsive (~0.294).
double first_sign_change();

/// Position of the first repulsive maximum of U, where the potential
/// starts to oscillate (~0.350). Throws for u <= 0.
double oscillation_onset(double coupling, double wavelength);

enum class BeamGeometry { Triad, SixTriads };
BeamGeometry parse_beam_geometry(std::string_view tag);

/// Per-beam intensities for a given total intensity.
std::vector<double> beam_budget(double total_intensity, BeamGeometry geometry);

}  // namespace selfbind
