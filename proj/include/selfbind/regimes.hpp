#pragma once

#include <string_view>
#include <vector>

#include "selfbind/species.hpp"
#include "selfbind/variational.hpp"

namespace selfbind {

enum class Regime { Unbound, G, TFG };
std::string_view to_string(Regime regime);

struct RegimePoint {
  double x = 0.0;  // log10(lambda / (N a))
  double y = 0.0;  // log10(I / I0)
  double n_border = 0.0;
  double f = 1.0;
  Regime label = Regime::Unbound;
};

/// N_border = sqrt(3 pi hbar^2 / (2 m u a)). Throws for u <= 0 or a <= 0.
double n_border(double coupling, const AtomSpecies& species);

/// f = 1/2 + sqrt(1/4 + (N / N_border)^2).
double f_factor(double atom_number, double border);

/// (N / N_border)^2 expressed through X = lambda/(N a) and Y = I/I0:
/// (352 pi / 105) Y / X^2. Species-independent.
double border_ratio_squared(double kinetic_ratio, double intensity_ratio);

/// Classification in the dimensionless plane (X, Y), reading each "<~" as "<=":
///   G        : 1 <= X <= Y <= X^2
///   Unbound  : Y < X for X >= 1, Y <= 1 for X < 1
///   TFG      : everything else (there Y > 1 and N > N_border hold)
Regime classify_plane(double kinetic_ratio, double intensity_ratio);

RegimePoint classify(double atom_number, double intensity, const AtomSpecies& species,
                     double wavelength, bool use_detuned = false);

struct TrapRelevance {
  double parameter = 0.0;  // rho l0 lambda a
  bool negligible = false; // parameter > kTrapNegligibleCutoff
};
inline constexpr double kTrapNegligibleCutoff = 10.0;

/// Throws for omega0 <= 0.
TrapRelevance trap_relevance(double density, double trap_frequency, double wavelength,
                             const AtomSpecies& species);

enum class CapacityMode {
  ThomasFermi,      ///< N-free TF width, closed form N = rho pi^{3/2} (w lambda)^3
  SelfConsistent,   ///< kinetic term kept; fixed point over N
};

struct AtomCapacity {
  double atom_number = 0.0;
  double w_star = 0.0;
  int iterations = 0;
};

/// Number of atoms a Gaussian self-bound cloud holds at the given peak density.
/// Throws std::domain_error when unbound at the requested ratio.
AtomCapacity atom_capacity(double wavelength, double peak_density, double ratio,
                           const AtomSpecies& species, bool use_detuned = false,
                           CapacityMode mode = CapacityMode::ThomasFermi,
                           const MinimizerOptions& opts = {});

struct CapacityBand {
  double wavelength = 0.0;
  double n_low = 0.0;
  double n_high = 0.0;
};

/// Atom numbers at two peak densities over log-spaced wavelengths.
std::vector<CapacityBand> capacity_band(const AtomSpecies& species, double ratio,
                                        double density_low, double density_high,
                                        double lambda_min, double lambda_max, int count,
                                        CapacityMode mode = CapacityMode::ThomasFermi);

}  // namespace selfbind
