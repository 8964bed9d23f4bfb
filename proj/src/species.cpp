#include "selfbind/species.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace selfbind {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void file_error(int line, const std::string& what) {
  throw std::invalid_argument("species file line " + std::to_string(line) + ": " + what);
}

}  // namespace

IntensityUnit parse_intensity_unit(std::string_view tag) {
  std::string t;
  for (char ch : tag)
    if (ch != '^' && ch != ' ') t.push_back(ch);
  if (t == "W/m2") return IntensityUnit::WattPerM2;
  if (t == "W/cm2") return IntensityUnit::WattPerCm2;
  if (t == "mW/cm2") return IntensityUnit::MilliWattPerCm2;
  throw std::invalid_argument("unknown intensity unit '" + std::string(tag) + "'");
}

std::string_view to_string(IntensityUnit unit) {
  switch (unit) {
    case IntensityUnit::WattPerM2: return "W/m2";
    case IntensityUnit::WattPerCm2: return "W/cm2";
    case IntensityUnit::MilliWattPerCm2: return "mW/cm2";
  }
  return "?";
}

static double unit_scale(IntensityUnit unit) {
  switch (unit) {
    case IntensityUnit::WattPerM2: return 1.0;
    case IntensityUnit::WattPerCm2: return 1e4;
    case IntensityUnit::MilliWattPerCm2: return 10.0;
  }
  return 1.0;
}

double intensity_si(double value, IntensityUnit unit) {
  if (!(value >= 0.0)) throw std::invalid_argument("intensity must be non-negative");
  return value * unit_scale(unit);
}

double intensity_si(double value, std::string_view unit_tag) {
  return intensity_si(value, parse_intensity_unit(unit_tag));
}

double intensity_from_si(double watt_per_m2, IntensityUnit unit) {
  return watt_per_m2 / unit_scale(unit);
}

bool DetunedContext::far_detuned(double factor) const {
  return std::abs(detuning) >= factor * linewidth;
}

double AtomSpecies::contact_coupling() const {
  return 4.0 * constants::pi * scattering_length * constants::hbar * constants::hbar / mass;
}

double AtomSpecies::polarizability(bool use_detuned) const {
  if (!use_detuned) return polarizability_si(polarizability_volume);
  if (!detuned)
    throw std::invalid_argument("species '" + name + "' has no detuned polarizability");
  return polarizability_si(detuned->polarizability_volume);
}

void AtomSpecies::validate() const {
  if (!(mass > 0.0)) throw std::invalid_argument("species '" + name + "': mass must be positive");
  if (!(polarizability_volume > 0.0))
    throw std::invalid_argument("species '" + name + "': polarizability must be positive");
  if (!std::isfinite(scattering_length))
    throw std::invalid_argument("species '" + name + "': scattering length must be finite");
  if (detuned && !(detuned->polarizability_volume > 0.0))
    throw std::invalid_argument("species '" + name + "': detuned polarizability must be positive");
}

const std::vector<AtomSpecies>& builtin_species() {
  static const std::vector<AtomSpecies> table = [] {
    std::vector<AtomSpecies> t;
    // 23Na, D2 line. Detuned point: 1.7 GHz red of 3S1/2 F=1 -> 3P3/2.
    t.push_back(AtomSpecies{
        "Na", 3.8175e-26, 2.75e-9, 24.1e-30,
        DetunedContext{589e-9, -2.0 * constants::pi * 1.7e9, 2.0 * constants::pi * 9.795e6,
                       2.1e-29, 3.534e-24}});
    t.push_back(AtomSpecies{"Rb87", 1.4431e-25, 5.77e-9, 47.3e-30, std::nullopt});
    return t;
  }();
  return table;
}

std::vector<AtomSpecies> parse_species_file(std::istream& in) {
  std::vector<AtomSpecies> out;
  std::vector<int> detuned_keys;  // bitmask of detuned keys seen per record
  std::vector<int> record_line;
  std::string raw;
  int line_no = 0;

  auto number = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const double x = std::stod(v, &used);
      if (used != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      file_error(line_no, "'" + v + "' is not a number");
    }
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) file_error(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty()) file_error(line_no, "empty value for '" + key + "'");

    if (key == "name") {
      out.push_back(AtomSpecies{value, 0.0, 0.0, 0.0, std::nullopt});
      detuned_keys.push_back(0);
      record_line.push_back(line_no);
      continue;
    }
    if (out.empty()) file_error(line_no, "'" + key + "' before any 'name' key");
    AtomSpecies& sp = out.back();

    if (key == "mass_kg") {
      sp.mass = number(value);
    } else if (key == "a_m") {
      sp.scattering_length = number(value);
    } else if (key == "alpha_v_m3") {
      sp.polarizability_volume = number(value);
    } else if (key.rfind("detuned.", 0) == 0) {
      if (!sp.detuned) sp.detuned = DetunedContext{};
      const std::string sub = key.substr(8);
      int bit = 0;
      if (sub == "wavelength_m") {
        sp.detuned->transition_wavelength = number(value);
        bit = 1;
      } else if (sub == "detuning_rad_s") {
        sp.detuned->detuning = number(value);
        bit = 2;
      } else if (sub == "linewidth_rad_s") {
        sp.detuned->linewidth = number(value);
        bit = 4;
      } else if (sub == "dipole_Cm") {
        sp.detuned->dipole_matrix_element = number(value);
        bit = 8;
      } else if (sub == "alpha_v_m3") {
        sp.detuned->polarizability_volume = number(value);
        bit = 16;
      } else {
        file_error(line_no, "unknown key '" + key + "'");
      }
      detuned_keys.back() |= bit;
    } else {
      file_error(line_no, "unknown key '" + key + "'");
    }
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].detuned && detuned_keys[i] != 31)
      file_error(record_line[i], "incomplete detuned block for '" + out[i].name + "'");
    try {
      out[i].validate();
    } catch (const std::invalid_argument& e) {
      file_error(record_line[i], e.what());
    }
  }
  return out;
}

std::vector<AtomSpecies> load_species_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open species file '" + path + "'");
  return parse_species_file(in);
}

AtomSpecies catalog_lookup(std::string_view name, const std::vector<AtomSpecies>& extra) {
  for (const auto& sp : extra)
    if (sp.name == name) return sp;
  for (const auto& sp : builtin_species())
    if (sp.name == name) return sp;
  throw std::invalid_argument("unknown species '" + std::string(name) + "'");
}

}  // namespace selfbind
