#include "selfbind/regimes.hpp"

#include <cmath>
#include <stdexcept>

#include "selfbind/errors.hpp"

namespace selfbind {

using constants::hbar;
using constants::pi;

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Unbound: return "Unbound";
    case Regime::G: return "G";
    case Regime::TFG: return "TFG";
  }
  return "?";
}

double n_border(double coupling, const AtomSpecies& species) {
  if (!(coupling > 0.0)) throw std::invalid_argument("n_border: coupling must be > 0");
  if (!(species.scattering_length > 0.0))
    throw std::invalid_argument("n_border: scattering length must be > 0");
  return std::sqrt(3.0 * pi * hbar * hbar /
                   (2.0 * species.mass * coupling * species.scattering_length));
}

double f_factor(double atom_number, double border) {
  const double q = atom_number / border;
  return 0.5 + std::sqrt(0.25 + q * q);
}

double border_ratio_squared(double kinetic_ratio, double intensity_ratio) {
  return (352.0 * pi / 105.0) * intensity_ratio / (kinetic_ratio * kinetic_ratio);
}

Regime classify_plane(double kinetic_ratio, double intensity_ratio) {
  const double x = kinetic_ratio, y = intensity_ratio;
  if (x >= 1.0) {
    if (y < x) return Regime::Unbound;
    if (y <= x * x) return Regime::G;
    return Regime::TFG;
  }
  return y <= 1.0 ? Regime::Unbound : Regime::TFG;
}

RegimePoint classify(double atom_number, double intensity, const AtomSpecies& species,
                     double wavelength, bool use_detuned) {
  if (!(atom_number >= 1.0)) throw std::invalid_argument("classify: N must be >= 1");
  if (!(intensity > 0.0)) throw std::invalid_argument("classify: intensity must be > 0");
  const auto drive = make_interaction(species, wavelength, intensity, use_detuned);
  if (!(drive.threshold > 0.0)) throw std::domain_error("classify: scattering length must be > 0");
  const double big_x = wavelength / (atom_number * species.scattering_length);
  RegimePoint p;
  p.x = std::log10(big_x);
  p.y = std::log10(drive.ratio);
  p.n_border = n_border(drive.coupling, species);
  p.f = f_factor(atom_number, p.n_border);
  p.label = classify_plane(big_x, drive.ratio);
  return p;
}

TrapRelevance trap_relevance(double density, double trap_frequency, double wavelength,
                             const AtomSpecies& species) {
  if (!(trap_frequency > 0.0)) throw std::invalid_argument("trap_relevance: omega0 must be > 0");
  const double l0 = std::sqrt(hbar / (species.mass * trap_frequency));
  TrapRelevance t;
  t.parameter = density * l0 * wavelength * species.scattering_length;
  t.negligible = t.parameter > kTrapNegligibleCutoff;
  return t;
}

AtomCapacity atom_capacity(double wavelength, double peak_density, double ratio,
                           const AtomSpecies& species, bool use_detuned, CapacityMode mode,
                           const MinimizerOptions& opts) {
  if (!(peak_density > 0.0)) throw std::invalid_argument("atom_capacity: density must be > 0");
  auto cfg = tf_config(species, wavelength, ratio, 1.0, use_detuned);
  auto capacity_for = [&](double w) {
    const double b = w * wavelength;
    return peak_density * std::pow(pi, 1.5) * b * b * b;
  };

  const auto tf = minimize_width(cfg, opts);
  if (!tf.bound_global)
    throw std::domain_error("atom_capacity: no self-bound solution at I/I0 = " +
                            std::to_string(ratio));
  AtomCapacity out{capacity_for(*tf.w_star), *tf.w_star, 0};
  if (mode == CapacityMode::ThomasFermi) return out;

  cfg.tf_limit = false;
  for (int it = 1; it <= 100; ++it) {
    cfg.atom_number = std::max(1.0, out.atom_number);
    const auto r = minimize_width(cfg, opts);
    if (!r.bound_global)
      throw std::domain_error("atom_capacity: unbound with kinetic energy at N = " +
                              std::to_string(cfg.atom_number));
    const double next = capacity_for(*r.w_star);
    const bool done = std::abs(next - out.atom_number) <= 1e-6 * next;
    out = {next, *r.w_star, it};
    if (done) return out;
  }
  throw ConvergenceError("atom_capacity: self-consistent N did not converge");
}

std::vector<CapacityBand> capacity_band(const AtomSpecies& species, double ratio,
                                        double density_low, double density_high,
                                        double lambda_min, double lambda_max, int count,
                                        CapacityMode mode) {
  if (count < 2 || !(lambda_min > 0.0) || !(lambda_max > lambda_min))
    throw std::invalid_argument("capacity_band: bad wavelength range");
  std::vector<CapacityBand> out;
  out.reserve(count);
  const double step = std::log(lambda_max / lambda_min) / (count - 1);
  // The TF width is independent of N and lambda; solve once.
  const double tf_w = mode == CapacityMode::ThomasFermi
                          ? atom_capacity(lambda_min, density_low, ratio, species).w_star
                          : 0.0;
  for (int i = 0; i < count; ++i) {
    const double lambda = lambda_min * std::exp(step * i);
    if (mode == CapacityMode::ThomasFermi) {
      const double vol = std::pow(pi, 1.5) * std::pow(tf_w * lambda, 3);
      out.push_back({lambda, density_low * vol, density_high * vol});
    } else {
      out.push_back({lambda, atom_capacity(lambda, density_low, ratio, species, false, mode).atom_number,
                     atom_capacity(lambda, density_high, ratio, species, false, mode).atom_number});
    }
  }
  return out;
}

}  // namespace selfbind
