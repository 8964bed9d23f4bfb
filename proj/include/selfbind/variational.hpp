#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "selfbind/constants.hpp"
#include "selfbind/interaction.hpp"
#include "selfbind/species.hpp"

namespace selfbind {

/// Which pair kernel enters the mean-field integral.
enum class KernelType {
  Full,      ///< rotationally averaged laser-induced potential
  NearZone,  ///< pure -u/r
};

struct AnsatzConfig {
  double atom_number = 1.0;     // N >= 1
  AtomSpecies species;
  InteractionParams drive;
  double trap_frequency = 0.0;  // omega_0, rad/s
  bool tf_limit = false;        // drop the kinetic term
  KernelType kernel = KernelType::Full;

  /// Throws std::invalid_argument if N < 1, omega_0 < 0 or the drive is unset.
  void validate() const;
};

/// Energies per particle, J.
struct EnergyBreakdown {
  double kinetic = 0.0;
  double trap = 0.0;
  double swave = 0.0;
  double gravitational = 0.0;
  double total = 0.0;
};

struct VariationalResult {
  std::optional<double> w_star;  // width in units of lambda_L
  std::optional<double> r_rms;   // m
  EnergyBreakdown breakdown;     // at w_star (zeros when unbound)
  bool bound_local = false;      // finite-w local minimum exists
  bool bound_global = false;     // ... and lies below the dissociation limit E = 0
};

struct MinimizerOptions {
  double w_min = 1e-2;
  double w_max = 1e2;
  int grid_points = 400;
  double rel_tol = 1e-6;
};

// Gaussian ansatz psi ~ exp(-R^2 / 2 b^2), b = w lambda. The separation of two
// independent draws from |psi|^2 is Gaussian with per-axis variance b^2, hence a
// Maxwell-type radial law.

template <typename Scalar>
Scalar pair_separation_density(Scalar s, Scalar w) {
  using std::exp;
  using std::pow;
  const Scalar two_pi = Scalar(2 * constants::pi);
  return Scalar(4 * constants::pi) * s * s * pow(two_pi * w * w, Scalar(-1.5)) *
         exp(-s * s / (2 * w * w));
}

template <typename Scalar>
Scalar pair_separation_density_dw(Scalar s, Scalar w) {
  return pair_separation_density(s, w) * (s * s / (w * w * w) - Scalar(3) / w);
}

/// Peak density N / (pi^{3/2} b^3) of the Gaussian, m^-3.
inline double gaussian_peak_density(double atom_number, double width_m) {
  return atom_number / (std::pow(constants::pi, 1.5) * width_m * width_m * width_m);
}

/// R_rms = sqrt(3/2) b.
inline double gaussian_rms_radius(double width_m) { return std::sqrt(1.5) * width_m; }

/// Integral of P(s; w) * U(s) lambda / u over s in [0, 10 w] (reduced units).
/// Panels follow the 0.25 half-period of the oscillation (or w, if smaller);
/// each panel is adaptive Gauss-Kronrod. Throws QuadratureError on stall.
double gravitational_pair_integral(double w, KernelType kernel = KernelType::Full);

/// d/dw of the above, integrated as dP/dw * U.
double gravitational_pair_integral_dw(double w, KernelType kernel = KernelType::Full);

EnergyBreakdown energy_breakdown(double w, const AnsatzConfig& cfg);

/// d(E/N)/dw of the closed-form parts (kinetic, trap, swave), J.
double closed_form_energy_derivative(double w, const AnsatzConfig& cfg);

/// N u0 / lambda, the energy scale that makes E/N a function of (I/I0, w)
/// alone in the Thomas-Fermi limit.
double tf_energy_unit(const AnsatzConfig& cfg);

VariationalResult minimize_width(const AnsatzConfig& cfg, const MinimizerOptions& opts = {});

struct WidthSample {
  double ratio = 0.0;
  std::optional<double> w_star;
  std::optional<double> r_rms;
  bool bound_local = false;
  bool bound_global = false;
};

/// Re-drives cfg at each I/I0 in ratios (same species, wavelength and
/// polarizability choice). Results keep input order.
std::vector<WidthSample> width_vs_intensity(const AnsatzConfig& cfg, std::span<const double> ratios,
                                            const MinimizerOptions& opts = {});

/// I0 = (48 pi/7) hbar^2 c eps0^2 a / (m alpha^2), W/m^2.
/// Throws std::domain_error for a <= 0.
double threshold_intensity(const AtomSpecies& species, bool use_detuned = false);

struct CriticalRatioOptions {
  double lo = 0.5;
  double hi = 2.0;
  double rel_tol = 1e-3;
  MinimizerOptions minimizer;
};

/// Bisects I/I0 between the unbound and self-bound (bound_global) verdicts of
/// the Thomas-Fermi variational problem.
double critical_ratio_numeric(const AtomSpecies& species, double wavelength, double atom_number,
                              bool use_detuned = false, const CriticalRatioOptions& opts = {});

/// Mean-field validity numbers at a bound solution.
struct MfaValidity {
  double peak_density = 0.0;       // m^-3
  double gas_parameter = 0.0;      // rho a^3, should be << 1
  double coulomb_parameter = 0.0;  // rho (h^2 / m u)^3, should be >> 1
};
MfaValidity mfa_validity(const VariationalResult& result, const AnsatzConfig& cfg);

/// Thomas-Fermi limit of `cfg` at the given I/I0, no trap, full kernel.
AnsatzConfig tf_config(const AtomSpecies& species, double wavelength, double ratio,
                       double atom_number = 1.0, bool use_detuned = false);

}  // namespace selfbind
