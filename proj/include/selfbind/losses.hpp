#pragma once

#include <optional>

#include "selfbind/species.hpp"

namespace selfbind {

/// E_R = hbar^2 q^2 / (2 m), q = 2 pi / lambda.
double recoil_energy(double wavelength, const AtomSpecies& species);

/// Single-atom Rayleigh rate, Gamma = I q^3 alpha^2 / (3 h eps0^2 c).
double rayleigh_rate(double intensity, const AtomSpecies& species, double wavelength,
                     bool use_detuned);

/// Same rate written through the pair coupling: (20 pi / 11) u / (hbar lambda).
double rayleigh_rate_from_coupling(double coupling, double wavelength);

/// Lower bound on the lifetime with Lamb-Dicke suppression:
/// tau >= 1 / (Gamma (q R_rms)^2). Throws for non-positive arguments.
double lifetime_bound(double gamma_ray, double wavevector, double r_rms);

/// omega_p = sqrt(4 pi u rho_peak / m).
double plasma_frequency_direct(double coupling, double peak_density, const AtomSpecies& species);

/// omega_p ~ 0.25 (hbar Gamma^2 / E_R) N^2 f^{-3/2}.
double plasma_frequency_scaled(double atom_number, double gamma_ray, double recoil,
                               double border);

/// Gamma_interf ~ 0.05 (hbar Gamma N / E_R)^4 sqrt(hbar Omega / E_R) Gamma f^-3.
/// `triad_detuning` is the relative frequency offset between beams of a triad.
double interference_rate(double atom_number, double gamma_ray, double recoil,
                         double triad_detuning, double f);

struct SaturationResult {
  double s = 0.0;
  double rabi_frequency = 0.0;  // at the threshold intensity, rad/s
  bool conditions_hold = false; // |delta| >> gamma and |delta| >> Rabi (factor 10)
};

/// s(I) = I d^2 / (eps0 c hbar^2 delta^2). Requires a DetunedContext.
double saturation(double intensity, const AtomSpecies& species);

/// s(I0) = (48 pi / 7) a eps0 hbar^2 / (m d^2), independent of the detuning.
/// The far-detuning predicate is evaluated and reported, never enforced.
SaturationResult saturation_at_threshold(const AtomSpecies& species);

struct Repulsion {
  double strength = 0.0;  // K, J m
  bool negligible = false;
};
inline constexpr double kRepulsionNegligible = 1e-2;

/// K = s u, negligible when K/u < 1e-2.
Repulsion repulsion_coupling(double s, double coupling);

struct LossReport {
  double gamma_ray = 0.0;
  double tau_ray_lower_bound = 0.0;
  double omega_p_direct = 0.0;
  double omega_p_scaled = 0.0;
  double gamma_interf = 0.0;
  double oscillations_per_lifetime = 0.0;  // omega_p_scaled tau / 2 pi
  double triad_detuning = 0.0;
  double saturation = 0.0;            // at the operating intensity
  double saturation_threshold = 0.0;  // at I0
  double repulsion = 0.0;
  bool repulsion_negligible = false;
  double recoil = 0.0;
  // context
  double r_rms = 0.0;
  double peak_density = 0.0;
  double n_border = 0.0;
  double f = 1.0;
  double coupling = 0.0;
  double intensity = 0.0;
};

struct LossInputs {
  double ratio = 1.5;
  double atom_number = 40.0;
  std::optional<double> wavelength;      // defaults to the detuned transition wavelength
  std::optional<double> triad_detuning;  // defaults to omega_p_scaled
  bool use_detuned = true;
};

/// Full loss budget at the Thomas-Fermi variational solution of the given point.
/// Throws std::domain_error if the point is not self-bound.
LossReport loss_report(const AtomSpecies& species, const LossInputs& in);

}  // namespace selfbind
