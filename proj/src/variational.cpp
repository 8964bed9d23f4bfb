#include "selfbind/variational.hpp"

#include <algorithm>
#include <stdexcept>

#include "selfbind/errors.hpp"
#include "selfbind/numerics.hpp"

namespace selfbind {

using constants::hbar;
using constants::pi;

void AnsatzConfig::validate() const {
  if (!(atom_number >= 1.0)) throw std::invalid_argument("atom number must be >= 1");
  if (!(trap_frequency >= 0.0)) throw std::invalid_argument("trap frequency must be >= 0");
  if (!(drive.wavelength > 0.0)) throw std::invalid_argument("drive wavelength must be > 0");
  species.validate();
}

namespace {

constexpr double kHalfPeriod = 0.25;  // of sin(4 pi r~)
constexpr double kCutoff = 10.0;      // s_max = 10 w, weight < 1e-22 of peak

double kernel_value(double s, KernelType kernel) {
  return kernel == KernelType::Full ? reduced_potential(s) : -1.0 / s;
}

template <typename Weight>
double panel_sum(double w, KernelType kernel, Weight weight) {
  const double s_max = kCutoff * w;
  const bool full = kernel == KernelType::Full;
  const double width = full ? std::min(kHalfPeriod, w) : w;
  const int panels = static_cast<int>(std::ceil(s_max / width));
  // Size of the result: ~1/w deep in the near zone, ~1/w^3 once w >> lambda.
  const double scale = full ? std::min(1.0 / w, 1.0 / (w * w * w)) : 1.0 / w;
  const double abs_tol = 1e-14 * scale / panels;
  auto f = [&](double s) { return weight(s) * kernel_value(s, kernel); };
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = k * width;
    const double b = std::min(s_max, (k + 1) * width);
    total += numerics::integrate_panel(f, a, b, abs_tol, 1e-11).value;
  }
  return total;
}

}  // namespace

double gravitational_pair_integral(double w, KernelType kernel) {
  if (!(w > 0.0)) throw std::invalid_argument("width must be > 0");
  return panel_sum(w, kernel, [w](double s) { return pair_separation_density(s, w); });
}

double gravitational_pair_integral_dw(double w, KernelType kernel) {
  if (!(w > 0.0)) throw std::invalid_argument("width must be > 0");
  return panel_sum(w, kernel, [w](double s) { return pair_separation_density_dw(s, w); });
}

EnergyBreakdown energy_breakdown(double w, const AnsatzConfig& cfg) {
  if (!(w > 0.0)) throw std::invalid_argument("energy_breakdown: width must be > 0");
  const double m = cfg.species.mass;
  const double n = cfg.atom_number;
  const double lambda = cfg.drive.wavelength;
  const double b = w * lambda;

  EnergyBreakdown e;
  e.kinetic = cfg.tf_limit ? 0.0 : 3.0 * hbar * hbar / (4.0 * m * b * b);
  e.trap = 0.75 * m * cfg.trap_frequency * cfg.trap_frequency * b * b;
  e.swave = cfg.species.contact_coupling() * n / (2.0 * std::pow(2.0 * pi, 1.5) * b * b * b);
  e.gravitational = cfg.drive.coupling == 0.0
                        ? 0.0
                        : 0.5 * n * cfg.drive.coupling / lambda *
                              gravitational_pair_integral(w, cfg.kernel);
  e.total = e.kinetic + e.trap + e.swave + e.gravitational;
  return e;
}

double closed_form_energy_derivative(double w, const AnsatzConfig& cfg) {
  const double m = cfg.species.mass;
  const double lambda = cfg.drive.wavelength;
  const double b = w * lambda;
  double d = 1.5 * m * cfg.trap_frequency * cfg.trap_frequency * b * lambda;
  if (!cfg.tf_limit) d -= 1.5 * hbar * hbar / (m * b * b * b) * lambda;
  d -= 3.0 * cfg.species.contact_coupling() * cfg.atom_number /
       (2.0 * std::pow(2.0 * pi, 1.5) * b * b * b * b) * lambda;
  return d;
}

double tf_energy_unit(const AnsatzConfig& cfg) {
  return cfg.atom_number * coupling_at_threshold(cfg.species, cfg.drive.wavelength) /
         cfg.drive.wavelength;
}

VariationalResult minimize_width(const AnsatzConfig& cfg, const MinimizerOptions& opts) {
  cfg.validate();
  if (!(opts.w_min > 0.0 && opts.w_max > opts.w_min && opts.grid_points >= 3))
    throw std::invalid_argument("minimize_width: bad grid options");

  const int n = opts.grid_points;
  std::vector<double> ws(n), es(n);
  const double step = std::log(opts.w_max / opts.w_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    ws[i] = opts.w_min * std::exp(step * i);
    es[i] = energy_breakdown(ws[i], cfg).total;
  }

  VariationalResult best;
  double best_energy = 0.0;
  auto total = [&](double w) { return energy_breakdown(w, cfg).total; };
  for (int i = 1; i + 1 < n; ++i) {
    // dE/dw changes sign from - to + between the neighbours
    if (!(es[i] < es[i - 1] && es[i] <= es[i + 1])) continue;
    const auto g = numerics::golden_section_minimize(total, ws[i - 1], ws[i + 1], opts.rel_tol);
    if (!best.w_star || g.value < best_energy) {
      best.w_star = g.x;
      best_energy = g.value;
    }
  }
  if (!best.w_star) return best;

  best.bound_local = true;
  best.breakdown = energy_breakdown(*best.w_star, cfg);
  best.bound_global = best.breakdown.total < 0.0;
  best.r_rms = gaussian_rms_radius(*best.w_star * cfg.drive.wavelength);
  return best;
}

std::vector<WidthSample> width_vs_intensity(const AnsatzConfig& cfg, std::span<const double> ratios,
                                            const MinimizerOptions& opts) {
  std::vector<WidthSample> out;
  out.reserve(ratios.size());
  for (double ratio : ratios) {
    if (!(ratio > 0.0)) throw std::invalid_argument("width_vs_intensity: ratios must be positive");
    AnsatzConfig c = cfg;
    c.drive = interaction_at_ratio(cfg.species, cfg.drive.wavelength, ratio, cfg.drive.detuned);
    const auto r = minimize_width(c, opts);
    out.push_back(WidthSample{ratio, r.w_star, r.r_rms, r.bound_local, r.bound_global});
  }
  return out;
}

double threshold_intensity(const AtomSpecies& species, bool use_detuned) {
  if (!(species.scattering_length > 0.0))
    throw std::domain_error("threshold intensity undefined for scattering length <= 0");
  const double alpha = species.polarizability(use_detuned);
  if (!(alpha > 0.0)) throw std::domain_error("polarizability must be > 0");
  return (48.0 * pi / 7.0) * hbar * hbar * constants::c * constants::eps0 * constants::eps0 *
         species.scattering_length / (species.mass * alpha * alpha);
}

AnsatzConfig tf_config(const AtomSpecies& species, double wavelength, double ratio,
                       double atom_number, bool use_detuned) {
  AnsatzConfig cfg;
  cfg.atom_number = atom_number;
  cfg.species = species;
  cfg.drive = interaction_at_ratio(species, wavelength, ratio, use_detuned);
  cfg.tf_limit = true;
  return cfg;
}

double critical_ratio_numeric(const AtomSpecies& species, double wavelength, double atom_number,
                              bool use_detuned, const CriticalRatioOptions& opts) {
  auto bound = [&](double ratio) {
    return minimize_width(tf_config(species, wavelength, ratio, atom_number, use_detuned),
                          opts.minimizer)
        .bound_global;
  };
  if (bound(opts.lo) || !bound(opts.hi))
    throw ConvergenceError("critical_ratio_numeric: bound/unbound verdicts do not bracket [" +
                           std::to_string(opts.lo) + ", " + std::to_string(opts.hi) + "]");
  return numerics::bisect_predicate(bound, opts.lo, opts.hi, opts.rel_tol);
}

MfaValidity mfa_validity(const VariationalResult& result, const AnsatzConfig& cfg) {
  if (!result.w_star) throw std::domain_error("mfa_validity: no bound solution");
  MfaValidity v;
  v.peak_density = gaussian_peak_density(cfg.atom_number, *result.w_star * cfg.drive.wavelength);
  const double a = cfg.species.scattering_length;
  v.gas_parameter = v.peak_density * a * a * a;
  if (cfg.drive.coupling > 0.0) {
    const double bohr = constants::h * constants::h / (cfg.species.mass * cfg.drive.coupling);
    v.coulomb_parameter = v.peak_density * bohr * bohr * bohr;
  }
  return v;
}

}  // namespace selfbind
