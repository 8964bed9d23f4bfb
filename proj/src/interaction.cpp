#include "selfbind/interaction.hpp"

#include <stdexcept>
#include <string>

#include "selfbind/numerics.hpp"

namespace selfbind {

using constants::pi;

double coupling_u(double intensity, const AtomSpecies& species, double wavelength,
                  bool use_detuned) {
  if (!(intensity >= 0.0)) throw std::invalid_argument("coupling_u: intensity must be >= 0");
  if (!(wavelength > 0.0)) throw std::invalid_argument("coupling_u: wavelength must be > 0");
  const double alpha = species.polarizability(use_detuned);
  return (11.0 * pi / 15.0) * intensity * alpha * alpha /
         (constants::c * constants::eps0 * constants::eps0 * wavelength * wavelength);
}

double coupling_at_threshold(const AtomSpecies& species, double wavelength) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("coupling_at_threshold: wavelength must be > 0");
  return (176.0 * pi * pi / 35.0) * constants::hbar * constants::hbar * species.scattering_length /
         (species.mass * wavelength * wavelength);
}

static double threshold_or_zero(const AtomSpecies& species, double alpha) {
  if (!(species.scattering_length > 0.0)) return 0.0;
  return (48.0 * pi / 7.0) * constants::hbar * constants::hbar * constants::c * constants::eps0 *
         constants::eps0 * species.scattering_length / (species.mass * alpha * alpha);
}

InteractionParams make_interaction(const AtomSpecies& species, double wavelength, double intensity,
                                   bool use_detuned) {
  InteractionParams p;
  p.intensity = intensity;
  p.wavelength = wavelength;
  p.detuned = use_detuned;
  p.polarizability = species.polarizability(use_detuned);
  p.coupling = coupling_u(intensity, species, wavelength, use_detuned);
  p.threshold = threshold_or_zero(species, p.polarizability);
  p.ratio = p.threshold > 0.0 ? intensity / p.threshold : 0.0;
  p.wavevector = 2.0 * pi / wavelength;
  return p;
}

InteractionParams interaction_at_ratio(const AtomSpecies& species, double wavelength, double ratio,
                                       bool use_detuned) {
  if (!(ratio >= 0.0)) throw std::invalid_argument("intensity ratio must be >= 0");
  const double i0 = threshold_or_zero(species, species.polarizability(use_detuned));
  if (i0 <= 0.0)
    throw std::domain_error("threshold intensity undefined for non-positive scattering length");
  auto p = make_interaction(species, wavelength, ratio * i0, use_detuned);
  p.ratio = ratio;
  return p;
}

double u_iso(double rt, double coupling, double wavelength) {
  if (!(rt > 0.0)) throw std::invalid_argument("u_iso: reduced separation must be > 0");
  return coupling / wavelength * reduced_potential(rt);
}

double near_zone_limit(double r, double coupling) {
  if (!(r > 0.0)) throw std::invalid_argument("near_zone_limit: separation must be > 0");
  return -coupling / r;
}

double first_sign_change() {
  // U < 0 throughout the near zone; scan in steps well below the 0.25 half-period.
  double lo = 0.05;
  for (double hi = lo + 0.01; hi < 1.0; lo = hi, hi += 0.01) {
    if (reduced_potential(hi) > 0.0)
      return numerics::bisect_root([](double x) { return reduced_potential(x); }, lo, hi, 1e-12);
  }
  throw NumericalError("first_sign_change: no sign change below r/lambda = 1");
}

double oscillation_onset(double coupling, double wavelength) {
  if (!(coupling > 0.0)) throw std::invalid_argument("oscillation_onset: coupling must be > 0");
  if (!(wavelength > 0.0)) throw std::invalid_argument("oscillation_onset: wavelength must be > 0");
  // The first maximum sits inside the first repulsive lobe.
  const double left = first_sign_change();
  double right = left + 0.01;
  while (reduced_potential(right) > 0.0) right += 0.01;
  const auto r = numerics::golden_section_minimize(
      [&](double x) { return -u_iso(x, coupling, wavelength); }, left, right, 1e-9);
  return r.x;
}

BeamGeometry parse_beam_geometry(std::string_view tag) {
  if (tag == "triad") return BeamGeometry::Triad;
  if (tag == "six_triads" || tag == "six-triads") return BeamGeometry::SixTriads;
  throw std::invalid_argument("unknown beam geometry '" + std::string(tag) + "'");
}

std::vector<double> beam_budget(double total_intensity, BeamGeometry geometry) {
  if (!(total_intensity >= 0.0)) throw std::invalid_argument("beam_budget: intensity must be >= 0");
  switch (geometry) {
    case BeamGeometry::Triad:
      return std::vector<double>(3, total_intensity / 3.0);
    case BeamGeometry::SixTriads: {
      std::vector<double> beams(12, total_intensity / 15.0);
      beams.insert(beams.end(), 6, total_intensity / 30.0);
      return beams;
    }
  }
  throw std::invalid_argument("unknown beam geometry");
}

}  // namespace selfbind
