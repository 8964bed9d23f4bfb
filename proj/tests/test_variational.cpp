#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "selfbind/variational.hpp"

using namespace selfbind;

namespace {

AtomSpecies sodium() { return catalog_lookup("Na"); }

struct McEstimate {
  double mean;
  double sigma;
};

// <K(|X - Y|)> for X, Y drawn from the Gaussian ansatz of width w (reduced units).
template <typename Kernel>
McEstimate monte_carlo_pair(double w, Kernel kernel, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, w);
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = g(rng), y = g(rng), z = g(rng);
    const double v = kernel(std::sqrt(x * x + y * y + z * z));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double var = sum2 / samples - mean * mean;
  return {mean, std::sqrt(var / samples)};
}

}  // namespace

TEST_CASE("pair separation law is normalized") {
  for (double w : {0.05, 0.3, 2.0}) {
    const double norm = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [w](double s) { return pair_separation_density(s, w); }, 0.0, 20.0 * w, 15, 1e-14);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("near-zone pair integral: closed form and Monte Carlo") {
  for (double w : {0.02, 0.3, 2.0, 20.0}) {
    const double quad = gravitational_pair_integral(w, KernelType::NearZone);
    CHECK(quad == doctest::Approx(-std::sqrt(2.0 / constants::pi) / w).epsilon(1e-9));
  }
  const double w = 0.3;
  const auto mc = monte_carlo_pair(w, [](double s) { return -1.0 / s; }, 1000000, 42);
  const double quad = gravitational_pair_integral(w, KernelType::NearZone);
  CHECK(std::abs(mc.mean - quad) / std::abs(quad) < 5e-3);

  // the same via energy_breakdown
  const auto cfg_full = tf_config(sodium(), 589e-9, 1.5, 100.0, true);
  auto cfg = cfg_full;
  cfg.kernel = KernelType::NearZone;
  const double b = w * cfg.drive.wavelength;
  const auto e = energy_breakdown(w, cfg);
  CHECK(e.gravitational ==
        doctest::Approx(-cfg.drive.coupling * 100.0 / (std::sqrt(2.0 * constants::pi) * b)).epsilon(1e-9));
}

TEST_CASE("full-kernel pair integral agrees with Monte Carlo at 3 sigma") {
  const double w = 0.3;
  const auto mc = monte_carlo_pair(w, [](double s) { return reduced_potential(s); }, 1000000, 2024);
  const double quad = gravitational_pair_integral(w, KernelType::Full);
  CHECK(std::abs(mc.mean - quad) < 3.0 * mc.sigma);
  CHECK(quad < 0.0);
}

TEST_CASE("energy breakdown structure") {
  auto cfg = tf_config(sodium(), 589e-9, 1.5, 50.0, true);
  cfg.tf_limit = false;
  cfg.trap_frequency = 2.0 * constants::pi * 100.0;
  const double w = 0.7;
  const double b = w * cfg.drive.wavelength;
  const auto e = energy_breakdown(w, cfg);
  const double m = cfg.species.mass, hb = constants::hbar;
  CHECK(e.kinetic == doctest::Approx(3.0 * hb * hb / (4.0 * m * b * b)).epsilon(1e-14));
  CHECK(e.trap == doctest::Approx(0.75 * m * cfg.trap_frequency * cfg.trap_frequency * b * b).epsilon(1e-14));
  CHECK(e.swave == doctest::Approx(cfg.species.contact_coupling() * 50.0 /
                                   (2.0 * std::pow(2.0 * constants::pi, 1.5) * b * b * b))
                       .epsilon(1e-14));
  CHECK(e.total == doctest::Approx(e.kinetic + e.trap + e.swave + e.gravitational).epsilon(1e-14));
  cfg.tf_limit = true;
  CHECK(energy_breakdown(w, cfg).kinetic == 0.0);
  CHECK_THROWS_AS(energy_breakdown(0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(energy_breakdown(-1.0, cfg), std::invalid_argument);

  // switching the drive off leaves pure repulsion, falling as w^-3
  auto off = cfg;
  off.trap_frequency = 0.0;
  off.drive = make_interaction(cfg.species, 589e-9, 0.0, true);
  CHECK(energy_breakdown(0.5, off).gravitational == 0.0);
  CHECK(energy_breakdown(0.5, off).total / energy_breakdown(1.0, off).total == doctest::Approx(8.0));
}

TEST_CASE("derivatives against finite differences") {
  auto cfg = tf_config(sodium(), 589e-9, 1.5, 50.0, true);
  cfg.tf_limit = false;
  cfg.trap_frequency = 2.0 * constants::pi * 1e3;
  for (double w : {0.2, 0.5, 1.3}) {
    const double h = 1e-5 * w;
    auto closed = [&](double x) {
      const auto e = energy_breakdown(x, cfg);
      return e.kinetic + e.trap + e.swave;
    };
    const double fd = (closed(w + h) - closed(w - h)) / (2 * h);
    CHECK(closed_form_energy_derivative(w, cfg) == doctest::Approx(fd).epsilon(1e-6));

    const double gfd =
        (gravitational_pair_integral(w + h) - gravitational_pair_integral(w - h)) / (2 * h);
    CHECK(gravitational_pair_integral_dw(w) == doctest::Approx(gfd).epsilon(1e-4));
  }
}

TEST_CASE("Thomas-Fermi energy in reduced units is species and wavelength free") {
  const auto na = sodium();
  const auto rb = catalog_lookup("Rb87");
  const auto a = tf_config(na, 589e-9, 1.5, 10.0, true);
  const auto b = tf_config(rb, 1064e-9, 1.5, 300.0, false);
  for (double w : {0.2, 0.35, 0.8, 2.0}) {
    const double ea = energy_breakdown(w, a).total / tf_energy_unit(a);
    const double eb = energy_breakdown(w, b).total / tf_energy_unit(b);
    CHECK(ea == doctest::Approx(eb).epsilon(1e-9));
  }
  const auto ra = minimize_width(a);
  const auto rb_ = minimize_width(b);
  REQUIRE(ra.w_star);
  REQUIRE(rb_.w_star);
  CHECK(*ra.w_star == doctest::Approx(*rb_.w_star).epsilon(1e-3));
}

TEST_CASE("pure Newtonian attraction with kinetic energy: analytic width") {
  auto sp = sodium();
  sp.scattering_length = 0.0;
  AnsatzConfig cfg;
  cfg.atom_number = 200.0;
  cfg.species = sp;
  cfg.drive = make_interaction(sodium(), 589e-9, 2620.0, true);
  cfg.kernel = KernelType::NearZone;
  const double u = cfg.drive.coupling, m = sp.mass, hb = constants::hbar;
  const double b = 3.0 * std::sqrt(2.0 * constants::pi) * hb * hb / (2.0 * m * u * cfg.atom_number);
  const auto r = minimize_width(cfg, {1e-3, 1e6, 400, 1e-9});
  REQUIRE(r.w_star);
  CHECK(*r.w_star * cfg.drive.wavelength == doctest::Approx(b).epsilon(1e-5));
  // E/N at the minimum = -m u^2 N^2 / (6 pi hbar^2)
  CHECK(r.breakdown.total ==
        doctest::Approx(-m * u * u * 200.0 * 200.0 / (6.0 * constants::pi * hb * hb)).epsilon(1e-8));
  CHECK(r.bound_global);
}

TEST_CASE("bound and unbound verdicts") {
  const auto na = sodium();
  const auto low = minimize_width(tf_config(na, 589e-9, 0.5, 1.0, true));
  CHECK_FALSE(low.w_star);
  CHECK_FALSE(low.bound_global);
  CHECK_FALSE(minimize_width(tf_config(na, 589e-9, 0.9, 1.0, true)).bound_global);

  const auto r = minimize_width(tf_config(na, 589e-9, 1.5, 40.0, true));
  REQUIRE(r.w_star);
  CHECK(r.bound_local);
  CHECK(r.bound_global);
  CHECK(r.breakdown.total < 0.0);
  CHECK(*r.r_rms == doctest::Approx(gaussian_rms_radius(*r.w_star * 589e-9)));
  CHECK(*r.r_rms / 589e-9 == doctest::Approx(0.43).epsilon(0.05));

  // bound_global implies a negative energy and a local minimum, across a sweep
  for (double ratio : {0.95, 1.0, 1.05, 1.2, 2.0, 4.0}) {
    const auto s = minimize_width(tf_config(na, 589e-9, ratio, 1.0, true));
    if (s.bound_global) {
      CHECK(s.bound_local);
      CHECK(s.breakdown.total < 0.0);
    }
    if (!s.bound_local) CHECK_FALSE(s.bound_global);
  }
}

TEST_CASE("width decreases with intensity and scales as I^-1/2 at large I") {
  const auto cfg = tf_config(sodium(), 589e-9, 1.5, 1.0, true);
  const std::vector<double> ratios{0.9, 1.1, 1.5, 3.0, 10.0};
  const auto sweep = width_vs_intensity(cfg, ratios);
  REQUIRE(sweep.size() == ratios.size());
  CHECK_FALSE(sweep[0].bound_global);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].ratio == ratios[i]);
    REQUIRE(sweep[i].w_star);
    if (i > 1) CHECK(*sweep[i].w_star < *sweep[i - 1].w_star);
  }
  const std::vector<double> far{10.0, 100.0};
  const auto tail = width_vs_intensity(cfg, far);
  const double slope = std::log(*tail[1].w_star / *tail[0].w_star) / std::log(10.0);
  CHECK(slope == doctest::Approx(-0.5).epsilon(0.1));
}

TEST_CASE("threshold intensity") {
  const auto na = sodium();
  CHECK(intensity_from_si(threshold_intensity(na, true), IntensityUnit::MilliWattPerCm2) ==
        doctest::Approx(262.0).epsilon(0.03));
  auto bad = na;
  bad.scattering_length = 0.0;
  CHECK_THROWS_AS(threshold_intensity(bad), std::domain_error);
  // I0 scales as a / alpha^2
  auto twice = na;
  twice.scattering_length *= 2.0;
  CHECK(threshold_intensity(twice) == doctest::Approx(2.0 * threshold_intensity(na)).epsilon(1e-14));
}

TEST_CASE("critical ratio is near one and independent of N and wavelength") {
  const auto na = sodium();
  const double base = critical_ratio_numeric(na, 589e-9, 1.0, true);
  CHECK(base == doctest::Approx(1.0).epsilon(0.05));
  CHECK(critical_ratio_numeric(na, 589e-9, 1000.0, true) == doctest::Approx(base).epsilon(1e-3));
  CHECK(critical_ratio_numeric(na, 1064e-9, 1.0, false) == doctest::Approx(base).epsilon(1e-3));
}

TEST_CASE("mean-field validity numbers") {
  const auto cfg = tf_config(sodium(), 589e-9, 1.5, 40.0, true);
  const auto r = minimize_width(cfg);
  const auto v = mfa_validity(r, cfg);
  const double b = *r.w_star * 589e-9;
  CHECK(v.peak_density == doctest::Approx(gaussian_peak_density(40.0, b)));
  CHECK(v.gas_parameter < 1e-3);
  CHECK(v.coulomb_parameter > 1.0);
  CHECK_THROWS_AS(mfa_validity(minimize_width(tf_config(sodium(), 589e-9, 0.5)), cfg),
                  std::domain_error);
}

TEST_CASE("configuration validation") {
  auto cfg = tf_config(sodium(), 589e-9, 1.5);
  cfg.atom_number = 0.5;
  CHECK_THROWS_AS(minimize_width(cfg), std::invalid_argument);
  cfg.atom_number = 10.0;
  cfg.trap_frequency = -1.0;
  CHECK_THROWS_AS(minimize_width(cfg), std::invalid_argument);
}
