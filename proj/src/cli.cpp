#include "selfbind/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "selfbind/dataset.hpp"
#include "selfbind/errors.hpp"
#include "selfbind/gpe.hpp"
#include "selfbind/interaction.hpp"
#include "selfbind/losses.hpp"
#include "selfbind/regimes.hpp"
#include "selfbind/species.hpp"
#include "selfbind/variational.hpp"

namespace selfbind::cli {

namespace {

constexpr double kDefaultStaticWavelength = 1.064e-6;  // Nd:YAG
constexpr double kPerCm3 = 1e6;                       // cm^-3 -> m^-3

struct SpeciesChoice {
  std::string name = "Na";
  bool force_static = false;
  bool force_detuned = false;
  std::optional<double> wavelength;
};

struct Resolved {
  AtomSpecies species;
  bool detuned = false;
  double wavelength = 0.0;
};

struct DriveChoice {
  double ratio = 1.5;
  std::optional<double> intensity;
  std::string unit = "W/cm2";
};

struct Output {
  std::string path = "-";
  std::string format = "csv";
  std::string plot_script;
};

void add_species(CLI::App* sub, SpeciesChoice& c, bool with_wavelength = true) {
  sub->add_option("--species", c.name, "species name (built-in: Na, Rb87)");
  auto* st = sub->add_flag("--static", c.force_static, "use the static polarizability");
  auto* de = sub->add_flag("--detuned", c.force_detuned,
                           "use the polarizability at the catalogued detuning (default when the "
                           "species has one)");
  st->excludes(de);
  if (with_wavelength)
    sub->add_option("--lambda", c.wavelength,
                    "laser wavelength in m (default: transition wavelength when detuned, "
                    "1.064e-6 otherwise)");
}

void add_drive(CLI::App* sub, DriveChoice& d) {
  auto* r = sub->add_option("--ratio", d.ratio, "total intensity in units of the threshold I0");
  auto* i = sub->add_option("--intensity", d.intensity, "absolute total intensity (see --unit)");
  sub->add_option("--unit", d.unit, "intensity unit: W/m2, W/cm2, mW/cm2");
  r->excludes(i);
}

void add_output(CLI::App* sub, Output& o, bool table = true, bool plot = false) {
  sub->add_option("-o,--output", o.path, "output file ('-' for stdout)");
  if (table) sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  if (plot)
    sub->add_option("--plot-script", o.plot_script,
                    "also write a matplotlib script that plots the output file");
}

Resolved resolve(const SpeciesChoice& c, const std::vector<AtomSpecies>& extra) {
  Resolved r;
  r.species = catalog_lookup(c.name, extra);
  r.species.validate();
  if (c.force_detuned && !r.species.detuned)
    throw std::invalid_argument("species '" + c.name + "' has no detuned polarizability");
  r.detuned = c.force_detuned || (!c.force_static && r.species.detuned.has_value());
  if (c.wavelength)
    r.wavelength = *c.wavelength;
  else
    r.wavelength = r.detuned ? r.species.detuned->transition_wavelength : kDefaultStaticWavelength;
  if (!(r.wavelength > 0.0)) throw std::invalid_argument("--lambda must be positive");
  return r;
}

double resolve_ratio(const DriveChoice& d, const Resolved& r) {
  if (d.intensity)
    return intensity_si(*d.intensity, d.unit) / threshold_intensity(r.species, r.detuned);
  if (!(d.ratio > 0.0)) throw std::invalid_argument("--ratio must be positive");
  return d.ratio;
}

std::string ratio_label(double r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

void write_plot_script(const std::string& script, const std::string& data, const std::string& kind) {
  if (script.empty()) return;
  if (data.empty() || data == "-")
    throw std::invalid_argument("--plot-script needs --output to name the data file");
  std::ofstream os(script);
  if (!os) throw std::runtime_error("cannot write '" + script + "'");
  os << "# generated by selfbind " << kind << "\n"
     << "import csv\nimport matplotlib.pyplot as plt\n\n"
     << "with open(" << std::quoted(data) << ") as fh:\n"
     << "    rows = list(csv.reader(fh))\n"
     << "head, body = rows[0], rows[1:]\n"
     << "cols = list(zip(*body))\n";
  if (kind == "phase-map") {
    os << "colors = {'Unbound': 'lightgray', 'G': 'tab:blue', 'TFG': 'tab:orange'}\n"
       << "plt.scatter([float(v) for v in cols[0]], [float(v) for v in cols[1]],\n"
       << "            c=[colors[v] for v in cols[2]], s=8)\n"
       << "plt.xlabel('log10(lambda / N a)')\nplt.ylabel('log10(I / I0)')\n";
  } else {
    const bool logy = kind == "fig2";
    os << "x = [float(v) for v in cols[0]]\n"
       << "for j in range(1, len(head)):\n"
       << "    try:\n"
       << "        y = [float(v) for v in cols[j]]\n"
       << "    except ValueError:\n"
       << "        continue\n"
       << "    plt.plot(x, y, label=head[j])\n"
       << "plt.xlabel(head[0])\n"
       << (logy ? "plt.xscale('log')\nplt.yscale('log')\n" : "")
       << "plt.legend()\n";
  }
  os << "plt.savefig(" << std::quoted(data + ".png") << ", dpi=150)\n";
}

Json species_json(const AtomSpecies& sp) {
  Json j;
  j["name"] = sp.name;
  j["mass_kg"] = sp.mass;
  j["a_m"] = sp.scattering_length;
  j["alpha_v_m3"] = sp.polarizability_volume;
  if (sp.scattering_length > 0.0)
    j["I0_static_W_per_cm2"] =
        intensity_from_si(threshold_intensity(sp, false), IntensityUnit::WattPerCm2);
  if (sp.detuned) {
    const auto& d = *sp.detuned;
    j["detuned"] = Json{{"wavelength_m", d.transition_wavelength},
                        {"detuning_rad_s", d.detuning},
                        {"linewidth_rad_s", d.linewidth},
                        {"dipole_Cm", d.dipole_matrix_element},
                        {"alpha_v_m3", d.polarizability_volume}};
    if (sp.scattering_length > 0.0)
      j["I0_detuned_mW_per_cm2"] =
          intensity_from_si(threshold_intensity(sp, true), IntensityUnit::MilliWattPerCm2);
  }
  return j;
}

Json energies_json(const GridEnergies& e) {
  return Json{{"kinetic_J", e.kinetic},
              {"trap_J", e.trap},
              {"swave_J", e.swave},
              {"gravitational_J", e.gravitational},
              {"total_J", e.total()}};
}

KernelType parse_kernel(const std::string& k) {
  if (k == "full") return KernelType::Full;
  if (k == "newton" || k == "near_zone") return KernelType::NearZone;
  throw std::invalid_argument("unknown kernel '" + k + "'");
}

}  // namespace

std::vector<double> parse_ratio_list(const std::string& spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw std::invalid_argument("bad number '" + s + "' in '" + spec + "'");
    return v;
  };
  std::vector<double> out;
  if (spec.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(number(item));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
      throw std::invalid_argument("range must be start:stop:step with step > 0");
    const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (long k = 0; k <= steps; ++k) out.push_back(parts[0] + k * parts[2]);
  } else {
    std::stringstream ss(spec);
    for (std::string item; std::getline(ss, item, ',');) out.push_back(number(item));
  }
  if (out.empty()) throw std::invalid_argument("empty ratio list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"selfbind: self-binding of Bose condensates under laser-induced 1/r attraction"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "key=value file preloading any flag; command-line flags win");
  std::string species_file;
  app.add_option("--species-file", species_file, "extra species records (key=value)")
      ->envname("SELFBIND_SPECIES_FILE");
  app.require_subcommand(1, 1);

  std::map<std::string, std::function<void(const std::vector<AtomSpecies>&)>> actions;

  // catalog --------------------------------------------------------------
  Output catalog_out;
  auto* catalog = app.add_subcommand("catalog", "list built-in and file-supplied species as JSON");
  add_output(catalog, catalog_out, false);
  actions["catalog"] = [&](const std::vector<AtomSpecies>& extra) {
    Json list = Json::array();
    for (const auto& sp : builtin_species()) list.push_back(species_json(sp));
    for (const auto& sp : extra) list.push_back(species_json(sp));
    emit(Json{{"species", list}}, catalog_out.path, out);
  };

  // potential ------------------------------------------------------------
  Output pot_out;
  double pot_rmin = 0.01, pot_rmax = 3.0;
  int pot_points = 600;
  auto* potential = app.add_subcommand("potential", "sample U_iso in units of u/lambda vs r/lambda");
  potential->add_option("--rmin", pot_rmin, "smallest r/lambda");
  potential->add_option("--rmax", pot_rmax, "largest r/lambda");
  potential->add_option("--points", pot_points, "number of samples")->check(CLI::PositiveNumber);
  add_output(potential, pot_out);
  actions["potential"] = [&](const std::vector<AtomSpecies>&) {
    if (!(pot_rmin > 0.0 && pot_rmax > pot_rmin)) throw std::invalid_argument("need 0 < rmin < rmax");
    Table t{{"r_over_lambda", "U_over_u_per_lambda", "near_zone"}, {}};
    for (int k = 0; k < pot_points; ++k) {
      const double rt = pot_points == 1 ? pot_rmin
                                        : pot_rmin + (pot_rmax - pot_rmin) * k / (pot_points - 1);
      t.add_row({rt, reduced_potential(rt), -1.0 / rt});
    }
    emit(t, parse_format(pot_out.format), pot_out.path, out);
  };

  // threshold ------------------------------------------------------------
  SpeciesChoice thr_sp;
  Output thr_out;
  auto* threshold = app.add_subcommand("threshold", "self-binding threshold intensity I0 as JSON");
  add_species(threshold, thr_sp, false);
  add_output(threshold, thr_out, false);
  actions["threshold"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(thr_sp, extra);
    const double i0 = threshold_intensity(r.species, r.detuned);
    emit(Json{{"species", r.species.name},
              {"polarizability", r.detuned ? "detuned" : "static"},
              {"I0_W_per_m2", i0},
              {"I0_W_per_cm2", intensity_from_si(i0, IntensityUnit::WattPerCm2)}},
         thr_out.path, out);
  };

  // fig1a ----------------------------------------------------------------
  SpeciesChoice f1a_sp;
  Output f1a_out;
  std::string f1a_ratios = "0.5,0.8,1.0,1.2,1.5,2.0";
  double f1a_wmin = 0.05, f1a_wmax = 3.0;
  int f1a_points = 200;
  auto* fig1a = app.add_subcommand(
      "fig1a", "Thomas-Fermi variational E/N (units of N u0/lambda) vs width w, one column per I/I0");
  add_species(fig1a, f1a_sp);
  fig1a->add_option("--ratios", f1a_ratios, "I/I0 values: list a,b,c or range start:stop:step")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  fig1a->add_option("--w-min", f1a_wmin, "smallest width (units of lambda)");
  fig1a->add_option("--w-max", f1a_wmax, "largest width (units of lambda)");
  fig1a->add_option("--points", f1a_points, "number of widths (linear spacing)")->check(CLI::Range(2, 100000));
  add_output(fig1a, f1a_out, true, true);
  actions["fig1a"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(f1a_sp, extra);
    const auto ratios = parse_ratio_list(f1a_ratios);
    if (!(f1a_wmin > 0.0 && f1a_wmax > f1a_wmin)) throw std::invalid_argument("need 0 < w-min < w-max");
    Table t;
    t.columns.push_back("w");
    std::vector<AnsatzConfig> cfgs;
    for (double q : ratios) {
      t.columns.push_back("E_ratio_" + ratio_label(q));
      cfgs.push_back(tf_config(r.species, r.wavelength, q, 1.0, r.detuned));
    }
    for (int k = 0; k < f1a_points; ++k) {
      const double w = f1a_wmin + (f1a_wmax - f1a_wmin) * k / (f1a_points - 1);
      std::vector<Table::Value> row{w};
      for (const auto& c : cfgs) row.emplace_back(energy_breakdown(w, c).total / tf_energy_unit(c));
      t.add_row(std::move(row));
    }
    emit(t, parse_format(f1a_out.format), f1a_out.path, out);
    write_plot_script(f1a_out.plot_script, f1a_out.path, "fig1a");
  };

  // fig1b ----------------------------------------------------------------
  SpeciesChoice f1b_sp;
  Output f1b_out;
  std::string f1b_ratios = "1.1:5:0.1";
  auto* fig1b = app.add_subcommand("fig1b", "Thomas-Fermi equilibrium width w* vs I/I0");
  add_species(fig1b, f1b_sp);
  fig1b->add_option("--ratios", f1b_ratios, "I/I0 values: list a,b,c or range start:stop:step")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  add_output(fig1b, f1b_out, true, true);
  actions["fig1b"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(f1b_sp, extra);
    const auto ratios = parse_ratio_list(f1b_ratios);
    const auto cfg = tf_config(r.species, r.wavelength, 1.0, 1.0, r.detuned);
    Table t{{"ratio", "w_star", "R_rms_over_lambda", "bound"}, {}};
    for (const auto& s : width_vs_intensity(cfg, ratios)) {
      const double nan = std::nan("");
      t.add_row({s.ratio, s.w_star.value_or(nan),
                 s.r_rms ? *s.r_rms / r.wavelength : nan, std::string(s.bound_global ? "1" : "0")});
    }
    emit(t, parse_format(f1b_out.format), f1b_out.path, out);
    write_plot_script(f1b_out.plot_script, f1b_out.path, "fig1b");
  };

  // width-sweep ----------------------------------------------------------
  SpeciesChoice ws_sp;
  Output ws_out;
  std::string ws_ratios = "1.1:5:0.1";
  double ws_atoms = 1e4, ws_omega = 0.0;
  bool ws_tf = false;
  std::string ws_kernel = "full";
  auto* wsweep = app.add_subcommand("width-sweep",
                                    "variational width vs I/I0 at finite N (kinetic term kept)");
  add_species(wsweep, ws_sp);
  wsweep->add_option("--ratios", ws_ratios, "I/I0 values: list or start:stop:step")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::Join);
  wsweep->add_option("--n", ws_atoms, "atom number")->check(CLI::Range(1.0, 1e30));
  wsweep->add_option("--omega0", ws_omega, "isotropic trap frequency, rad/s");
  wsweep->add_flag("--tf", ws_tf, "drop the kinetic term");
  wsweep->add_option("--kernel", ws_kernel, "full or newton")->check(CLI::IsMember({"full", "newton"}));
  add_output(wsweep, ws_out);
  actions["width-sweep"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(ws_sp, extra);
    auto cfg = tf_config(r.species, r.wavelength, 1.0, ws_atoms, r.detuned);
    cfg.tf_limit = ws_tf;
    cfg.trap_frequency = ws_omega;
    cfg.kernel = parse_kernel(ws_kernel);
    Table t{{"ratio", "w_star", "R_rms_m", "bound_local", "bound_global"}, {}};
    const double nan = std::nan("");
    for (const auto& s : width_vs_intensity(cfg, parse_ratio_list(ws_ratios)))
      t.add_row({s.ratio, s.w_star.value_or(nan), s.r_rms.value_or(nan),
                 std::string(s.bound_local ? "1" : "0"), std::string(s.bound_global ? "1" : "0")});
    emit(t, parse_format(ws_out.format), ws_out.path, out);
  };

  // phase-map ------------------------------------------------------------
  Output pm_out;
  double pm_xmin = -2.0, pm_xmax = 3.0, pm_ymin = -1.0, pm_ymax = 4.0;
  int pm_nx = 51, pm_ny = 51;
  auto* phase = app.add_subcommand(
      "phase-map", "regime labels on the (log10(lambda/Na), log10(I/I0)) plane, no external trap");
  phase->add_option("--x-min", pm_xmin);
  phase->add_option("--x-max", pm_xmax);
  phase->add_option("--y-min", pm_ymin);
  phase->add_option("--y-max", pm_ymax);
  phase->add_option("--nx", pm_nx)->check(CLI::Range(2, 100000));
  phase->add_option("--ny", pm_ny)->check(CLI::Range(2, 100000));
  add_output(phase, pm_out, true, true);
  actions["phase-map"] = [&](const std::vector<AtomSpecies>&) {
    Table t{{"x", "y", "label"}, {}};
    for (int i = 0; i < pm_nx; ++i) {
      const double x = pm_xmin + (pm_xmax - pm_xmin) * i / (pm_nx - 1);
      for (int j = 0; j < pm_ny; ++j) {
        const double y = pm_ymin + (pm_ymax - pm_ymin) * j / (pm_ny - 1);
        t.add_row({x, y, std::string(to_string(classify_plane(std::pow(10.0, x), std::pow(10.0, y))))});
      }
    }
    emit(t, parse_format(pm_out.format), pm_out.path, out);
    write_plot_script(pm_out.plot_script, pm_out.path, "phase-map");
  };

  // fig2 -----------------------------------------------------------------
  SpeciesChoice f2_sp;
  Output f2_out;
  double f2_ratio = 1.5, f2_low = 1e15, f2_high = 1e16, f2_lmin = 0.4e-6, f2_lmax = 20e-6;
  int f2_count = 20;
  bool f2_sc = false;
  auto* fig2 = app.add_subcommand("fig2", "atom-number band vs wavelength at two peak densities");
  f2_sp.force_static = true;
  fig2->add_option("--species", f2_sp.name, "species name");
  fig2->add_option("--ratio", f2_ratio, "I/I0");
  fig2->add_option("--rho-low", f2_low, "lower peak density, cm^-3");
  fig2->add_option("--rho-high", f2_high, "upper peak density, cm^-3");
  fig2->add_option("--lambda-min", f2_lmin, "shortest wavelength, m");
  fig2->add_option("--lambda-max", f2_lmax, "longest wavelength, m");
  fig2->add_option("--count", f2_count, "number of log-spaced wavelengths")->check(CLI::Range(2, 100000));
  fig2->add_flag("--self-consistent", f2_sc, "keep the kinetic term (fixed point over N)");
  add_output(fig2, f2_out, true, true);
  actions["fig2"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(f2_sp, extra);
    Table t{{"lambda_m", "N_low", "N_high"}, {}};
    for (const auto& b : capacity_band(r.species, f2_ratio, f2_low * kPerCm3, f2_high * kPerCm3,
                                       f2_lmin, f2_lmax, f2_count,
                                       f2_sc ? CapacityMode::SelfConsistent : CapacityMode::ThomasFermi))
      t.add_row({b.wavelength, b.n_low, b.n_high});
    emit(t, parse_format(f2_out.format), f2_out.path, out);
    write_plot_script(f2_out.plot_script, f2_out.path, "fig2");
  };

  // atom-count -----------------------------------------------------------
  SpeciesChoice ac_sp;
  DriveChoice ac_drive;
  Output ac_out;
  double ac_rho = 1e15;
  bool ac_sc = false;
  auto* atoms = app.add_subcommand("atom-count", "atoms held by the self-bound Gaussian cloud");
  add_species(atoms, ac_sp);
  add_drive(atoms, ac_drive);
  atoms->add_option("--rho", ac_rho, "peak density, cm^-3");
  atoms->add_flag("--self-consistent", ac_sc, "keep the kinetic term (fixed point over N)");
  add_output(atoms, ac_out, false);
  actions["atom-count"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(ac_sp, extra);
    const double ratio = resolve_ratio(ac_drive, r);
    const auto cap = atom_capacity(r.wavelength, ac_rho * kPerCm3, ratio, r.species, r.detuned,
                                   ac_sc ? CapacityMode::SelfConsistent : CapacityMode::ThomasFermi);
    emit(Json{{"species", r.species.name},
              {"lambda_m", r.wavelength},
              {"ratio", ratio},
              {"peak_density_m3", ac_rho * kPerCm3},
              {"mode", ac_sc ? "self-consistent" : "thomas-fermi"},
              {"w_star", cap.w_star},
              {"N", cap.atom_number}},
         ac_out.path, out);
  };

  // gpe ------------------------------------------------------------------
  SpeciesChoice gpe_sp;
  DriveChoice gpe_drive;
  Output gpe_out;
  std::string gpe_kernel = "full", gpe_profile;
  double gpe_atoms = 1e4, gpe_omega = 0.0;
  int gpe_points = 1024, gpe_max_iter = 100000;
  bool gpe_tf = false;
  auto* gpe = app.add_subcommand("gpe", "radial imaginary-time ground state of the nonlocal GP equation");
  add_species(gpe, gpe_sp);
  add_drive(gpe, gpe_drive);
  gpe->add_option("--kernel", gpe_kernel, "full or newton")->check(CLI::IsMember({"full", "newton"}));
  gpe->add_option("--n", gpe_atoms, "atom number")->check(CLI::Range(1.0, 1e30));
  gpe->add_option("--omega0", gpe_omega, "isotropic trap frequency, rad/s");
  gpe->add_option("--points", gpe_points, "radial grid points")->check(CLI::Range(256, 1 << 16));
  gpe->add_option("--max-iter", gpe_max_iter, "iteration cap");
  gpe->add_flag("--tf", gpe_tf, "drop the kinetic term");
  gpe->add_option("--profile", gpe_profile, "CSV file for the profile (R, psi, rho, Phi)");
  add_output(gpe, gpe_out, false);
  actions["gpe"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(gpe_sp, extra);
    const double ratio = resolve_ratio(gpe_drive, r);
    auto cfg = tf_config(r.species, r.wavelength, ratio, gpe_atoms, r.detuned);
    cfg.tf_limit = gpe_tf;
    cfg.trap_frequency = gpe_omega;
    cfg.kernel = parse_kernel(gpe_kernel);
    const auto var = minimize_width(cfg);
    const auto grid = RadialGrid::make(gpe_points, 10.0 * var.r_rms.value_or(r.wavelength));
    GpeOptions opts;
    opts.max_iterations = gpe_max_iter;
    const auto state = solve_ground(cfg, grid, opts);
    Json j{{"species", r.species.name},
           {"kernel", gpe_kernel},
           {"ratio", ratio},
           {"N", gpe_atoms},
           {"lambda_m", r.wavelength},
           {"grid_points", gpe_points},
           {"R_max_m", grid.r_max},
           {"mu_J", state.mu},
           {"R_rms_m", state.r_rms},
           {"R_rms_over_lambda", state.r_rms / r.wavelength},
           {"variational_R_rms_m", var.r_rms ? Json(*var.r_rms) : Json(nullptr)},
           {"iterations", state.iterations},
           {"residual", state.residual},
           {"energies", energies_json(state.energies)}};
    emit(j, gpe_out.path, out);
    if (!gpe_profile.empty()) {
      Table t{{"R_m", "psi", "rho_m3", "Phi_J"}, {}};
      for (int i = 0; i < grid.n_points; ++i)
        t.add_row({grid.nodes[i], state.psi[i], state.density[i], state.potential[i]});
      emit(t, Format::Csv, gpe_profile, out);
    }
  };

  // losses ---------------------------------------------------------------
  SpeciesChoice loss_sp;
  DriveChoice loss_drive;
  Output loss_out;
  double loss_atoms = 40.0;
  std::optional<double> loss_triad;
  auto* losses = app.add_subcommand("losses", "Rayleigh / plasma / interference / saturation budget");
  add_species(losses, loss_sp);
  add_drive(losses, loss_drive);
  losses->add_option("--n", loss_atoms, "atom number")->check(CLI::Range(1.0, 1e30));
  losses->add_option("--triad-detuning", loss_triad,
                     "relative detuning of the triad beams, rad/s (default: omega_p)");
  add_output(losses, loss_out, false);
  actions["losses"] = [&](const std::vector<AtomSpecies>& extra) {
    const auto r = resolve(loss_sp, extra);
    LossInputs in;
    in.ratio = resolve_ratio(loss_drive, r);
    in.atom_number = loss_atoms;
    in.wavelength = r.wavelength;
    in.triad_detuning = loss_triad;
    in.use_detuned = r.detuned;
    const auto rep = loss_report(r.species, in);
    emit(Json{{"species", r.species.name},
              {"ratio", in.ratio},
              {"N", loss_atoms},
              {"lambda_m", r.wavelength},
              {"intensity_W_per_m2", rep.intensity},
              {"coupling_Jm", rep.coupling},
              {"R_rms_m", rep.r_rms},
              {"peak_density_m3", rep.peak_density},
              {"N_border", rep.n_border},
              {"f", rep.f},
              {"recoil_J", rep.recoil},
              {"recoil_over_hbar_per_s", rep.recoil / constants::hbar},
              {"gamma_ray_per_s", rep.gamma_ray},
              {"tau_ray_lower_bound_s", rep.tau_ray_lower_bound},
              {"omega_p_direct_rad_s", rep.omega_p_direct},
              {"omega_p_scaled_rad_s", rep.omega_p_scaled},
              {"oscillations_per_lifetime", rep.oscillations_per_lifetime},
              {"triad_detuning_rad_s", rep.triad_detuning},
              {"gamma_interf_per_s", rep.gamma_interf},
              {"saturation", rep.saturation},
              {"saturation_at_threshold", rep.saturation_threshold},
              {"repulsion_Jm", rep.repulsion},
              {"repulsion_negligible", rep.repulsion_negligible}},
         loss_out.path, out);
  };

  if (args.empty()) {
    err << app.help();
    return kUsageError;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // subcommand --help lands here as CallForHelp raised from the subcommand
    if (e.get_exit_code() == 0) {
      for (auto* sub : app.get_subcommands()) out << sub->help();
      return kOk;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    std::vector<AtomSpecies> extra;
    if (!species_file.empty()) extra = load_species_file(species_file);
    auto* chosen = app.get_subcommands().front();
    actions.at(chosen->get_name())(extra);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::domain_error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace selfbind::cli
