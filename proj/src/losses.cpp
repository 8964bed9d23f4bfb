#include "selfbind/losses.hpp"

#include <cmath>
#include <stdexcept>

#include "selfbind/interaction.hpp"
#include "selfbind/regimes.hpp"
#include "selfbind/variational.hpp"

namespace selfbind {

using constants::hbar;
using constants::pi;

double recoil_energy(double wavelength, const AtomSpecies& species) {
  const double q = 2.0 * pi / wavelength;
  return hbar * hbar * q * q / (2.0 * species.mass);
}

double rayleigh_rate(double intensity, const AtomSpecies& species, double wavelength,
                     bool use_detuned) {
  if (!(intensity >= 0.0)) throw std::invalid_argument("rayleigh_rate: intensity must be >= 0");
  const double q = 2.0 * pi / wavelength;
  const double alpha = species.polarizability(use_detuned);
  return intensity * q * q * q * alpha * alpha /
         (3.0 * constants::h * constants::eps0 * constants::eps0 * constants::c);
}

double rayleigh_rate_from_coupling(double coupling, double wavelength) {
  return (20.0 * pi / 11.0) * coupling / (hbar * wavelength);
}

double lifetime_bound(double gamma_ray, double wavevector, double r_rms) {
  if (!(gamma_ray > 0.0 && wavevector > 0.0 && r_rms > 0.0))
    throw std::invalid_argument("lifetime_bound: arguments must be positive");
  const double qr = wavevector * r_rms;
  return 1.0 / (gamma_ray * qr * qr);
}

double plasma_frequency_direct(double coupling, double peak_density, const AtomSpecies& species) {
  return std::sqrt(4.0 * pi * coupling * peak_density / species.mass);
}

double plasma_frequency_scaled(double atom_number, double gamma_ray, double recoil,
                               double border) {
  const double f = f_factor(atom_number, border);
  return 0.25 * hbar * gamma_ray * gamma_ray / recoil * atom_number * atom_number *
         std::pow(f, -1.5);
}

double interference_rate(double atom_number, double gamma_ray, double recoil,
                         double triad_detuning, double f) {
  if (!(triad_detuning > 0.0))
    throw std::invalid_argument("interference_rate: triad detuning must be > 0");
  const double x = hbar * gamma_ray * atom_number / recoil;
  return 0.05 * x * x * x * x * std::sqrt(hbar * triad_detuning / recoil) * gamma_ray *
         std::pow(f, -3.0);
}

static const DetunedContext& require_dipole(const AtomSpecies& species) {
  if (!species.detuned || !(species.detuned->dipole_matrix_element > 0.0))
    throw std::invalid_argument("species '" + species.name + "' has no dipole matrix element");
  return *species.detuned;
}

double saturation(double intensity, const AtomSpecies& species) {
  const auto& ctx = require_dipole(species);
  const double d = ctx.dipole_matrix_element;
  return intensity * d * d /
         (constants::eps0 * constants::c * hbar * hbar * ctx.detuning * ctx.detuning);
}

SaturationResult saturation_at_threshold(const AtomSpecies& species) {
  const auto& ctx = require_dipole(species);
  const double d = ctx.dipole_matrix_element;
  SaturationResult r;
  r.s = (48.0 * pi / 7.0) * species.scattering_length * constants::eps0 * hbar * hbar /
        (species.mass * d * d);
  const double i0 = threshold_intensity(species, true);
  const double field = std::sqrt(2.0 * i0 / (constants::c * constants::eps0));
  r.rabi_frequency = d * field / hbar;
  r.conditions_hold = ctx.far_detuned() && std::abs(ctx.detuning) >= 10.0 * r.rabi_frequency;
  return r;
}

Repulsion repulsion_coupling(double s, double coupling) {
  if (!(s >= 0.0 && coupling >= 0.0))
    throw std::invalid_argument("repulsion_coupling: arguments must be >= 0");
  return {s * coupling, s < kRepulsionNegligible};
}

LossReport loss_report(const AtomSpecies& species, const LossInputs& in) {
  double lambda = 0.0;
  if (in.wavelength) {
    lambda = *in.wavelength;
  } else if (in.use_detuned && species.detuned) {
    lambda = species.detuned->transition_wavelength;
  } else {
    throw std::invalid_argument("loss_report: wavelength required");
  }

  const auto cfg = tf_config(species, lambda, in.ratio, in.atom_number, in.use_detuned);
  const auto var = minimize_width(cfg);
  if (!var.bound_global)
    throw std::domain_error("loss_report: no self-bound solution at I/I0 = " +
                            std::to_string(in.ratio));

  LossReport rep;
  rep.intensity = cfg.drive.intensity;
  rep.coupling = cfg.drive.coupling;
  rep.r_rms = *var.r_rms;
  rep.peak_density = gaussian_peak_density(in.atom_number, *var.w_star * lambda);
  rep.recoil = recoil_energy(lambda, species);
  rep.gamma_ray = rayleigh_rate(cfg.drive.intensity, species, lambda, in.use_detuned);
  rep.tau_ray_lower_bound = lifetime_bound(rep.gamma_ray, cfg.drive.wavevector, rep.r_rms);
  rep.n_border = n_border(rep.coupling, species);
  rep.f = f_factor(in.atom_number, rep.n_border);
  rep.omega_p_direct = plasma_frequency_direct(rep.coupling, rep.peak_density, species);
  rep.omega_p_scaled =
      plasma_frequency_scaled(in.atom_number, rep.gamma_ray, rep.recoil, rep.n_border);
  rep.oscillations_per_lifetime =
      rep.omega_p_scaled * rep.tau_ray_lower_bound / (2.0 * constants::pi);
  rep.triad_detuning = in.triad_detuning ? *in.triad_detuning : rep.omega_p_scaled;
  rep.gamma_interf =
      interference_rate(in.atom_number, rep.gamma_ray, rep.recoil, rep.triad_detuning, rep.f);
  if (species.detuned && species.detuned->dipole_matrix_element > 0.0) {
    rep.saturation = saturation(cfg.drive.intensity, species);
    rep.saturation_threshold = saturation_at_threshold(species).s;
    const auto k = repulsion_coupling(rep.saturation, rep.coupling);
    rep.repulsion = k.strength;
    rep.repulsion_negligible = k.negligible;
  }
  return rep;
}

}  // namespace selfbind
