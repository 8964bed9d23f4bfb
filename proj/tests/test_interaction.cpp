#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <algorithm>

#include "selfbind/interaction.hpp"
#include "selfbind/variational.hpp"

using namespace selfbind;

namespace {

// Independent evaluation of the five-term bracket in extended precision.
long double direct_long(long double rt) {
  const long double y = 2.0L * 3.14159265358979323846264338327950288L * rt;
  const long double s = std::sin(2 * y), c = std::cos(2 * y);
  return -(15.0L * 3.14159265358979323846264338327950288L / 11.0L) *
         (s / (y * y) + 2 * c / (y * y * y) - 5 * s / std::pow(y, 4) - 6 * c / std::pow(y, 5) +
          3 * s / std::pow(y, 6));
}

}  // namespace

TEST_CASE("coupling u: linearity and the threshold route") {
  const auto na = catalog_lookup("Na");
  CHECK(coupling_u(0.0, na, 589e-9, true) == 0.0);
  const double u1 = coupling_u(1000.0, na, 589e-9, true);
  CHECK(coupling_u(2000.0, na, 589e-9, true) == doctest::Approx(2.0 * u1).epsilon(1e-15));

  const double i0 = threshold_intensity(na, true);
  const double u_direct = coupling_u(i0, na, 589e-9, true);
  const double u_closed = coupling_at_threshold(na, 589e-9);
  CHECK(u_direct == doctest::Approx(u_closed).epsilon(1e-12));
  CHECK(u_direct == doctest::Approx(1.15e-37).epsilon(0.01));
  // the threshold coupling does not care which polarizability reached I0
  CHECK(coupling_u(threshold_intensity(na, false), na, 589e-9, false) ==
        doctest::Approx(u_closed).epsilon(1e-12));

  CHECK_THROWS_AS(coupling_u(1.0, catalog_lookup("Rb87"), 780e-9, true), std::invalid_argument);
  CHECK_THROWS_AS(coupling_u(-1.0, na, 589e-9, false), std::invalid_argument);
  CHECK_THROWS_AS(coupling_u(1.0, na, 0.0, false), std::invalid_argument);
}

TEST_CASE("InteractionParams invariants") {
  const auto na = catalog_lookup("Na");
  const auto p = interaction_at_ratio(na, 589e-9, 1.5, true);
  CHECK(p.wavevector * p.wavelength == doctest::Approx(2.0 * constants::pi));
  CHECK(p.ratio == 1.5);
  CHECK(p.intensity == doctest::Approx(1.5 * p.threshold));
  CHECK(p.coupling == doctest::Approx(1.5 * coupling_at_threshold(na, 589e-9)).epsilon(1e-12));
  CHECK(p.coupling >= 0);
}

TEST_CASE("near-zone limit of the pair potential") {
  CHECK(reduced_potential(1e-3) * 1e-3 == doctest::Approx(-1.0).epsilon(1e-4));
  // leading correction is (92/105)/(22/15) y^2
  const double c1 = (92.0 / 105.0) / (22.0 / 15.0);
  for (double lg = -4.0; lg <= -2.0; lg += 0.05) {
    const double rt = std::pow(10.0, lg);
    const double y = 2.0 * constants::pi * rt;
    const double dev = std::abs(reduced_potential(rt) * rt + 1.0);
    CHECK(dev == doctest::Approx(c1 * y * y).epsilon(0.01));
    if (rt <= 6e-3) CHECK(dev < 1e-3);
  }
  const double u = 1.3e-37, lambda = 589e-9;
  CHECK(near_zone_limit(lambda, u) == -u / lambda);
  CHECK(near_zone_limit(1e-9, 0.0) == 0.0);
  CHECK(u_iso(1e-5, u, lambda) / near_zone_limit(1e-5 * lambda, u) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(u_iso(0.0, u, lambda), std::invalid_argument);
  CHECK_THROWS_AS(u_iso(-1.0, u, lambda), std::invalid_argument);
  CHECK_THROWS_AS(near_zone_limit(0.0, u), std::invalid_argument);
}

TEST_CASE("series branch agrees with the direct formula around the switch") {
  const double rt_switch = kernel::kSeriesSwitch / (2.0 * constants::pi);
  for (double f = 0.6; f <= 1.4; f += 0.01) {
    const double rt = f * rt_switch;
    const double series = reduced_potential_series(rt);
    const double direct = reduced_potential_direct(rt);
    CHECK(std::abs(series - direct) / std::abs(series) < 1e-8);
    CHECK(std::abs(series - static_cast<double>(direct_long(rt))) / std::abs(series) < 1e-12);
  }
  // continuity of the branched evaluator across the switch
  const double below = reduced_potential(std::nextafter(rt_switch, 0.0));
  const double above = reduced_potential(std::nextafter(rt_switch, 1.0));
  CHECK(std::abs(below - above) / std::abs(below) < 1e-10);
  // deep in the near zone the series must match a high-precision direct sum
  CHECK(reduced_potential(1e-3) == doctest::Approx(static_cast<double>(direct_long(1e-3L))).epsilon(1e-9));
}

TEST_CASE("scale covariance in u") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(1e-3, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double rt = r(rng);
    CHECK(u_iso(rt, 2e-37, 1e-6) == doctest::Approx(2.0 * u_iso(rt, 1e-37, 1e-6)).epsilon(1e-15));
  }
}

TEST_CASE("far-zone envelope") {
  for (double rt = 1.0; rt < 100.0; rt *= 1.07) {
    const double y = 2.0 * constants::pi * rt;
    const double env = kernel::kPrefactor *
                       (1 / (y * y) + 2 / std::pow(y, 3) + 5 / std::pow(y, 4) + 6 / std::pow(y, 5) +
                        3 / std::pow(y, 6));
    CHECK(std::abs(reduced_potential(rt)) <= env);
  }
  CHECK(std::abs(reduced_potential(1e4)) < 1e-8);
}

TEST_CASE("sign landmarks") {
  const double first = first_sign_change();
  CHECK(reduced_potential(first - 1e-4) < 0.0);
  CHECK(reduced_potential(first + 1e-4) > 0.0);
  for (double rt = 1e-4; rt < first - 1e-4; rt += 1e-3) CHECK(reduced_potential(rt) < 0.0);

  int changes = 0;
  double prev = reduced_potential(first + 1e-4);
  for (double rt = first + 1e-3; rt < 3.0; rt += 1e-3) {
    const double v = reduced_potential(rt);
    if ((v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  CHECK(changes >= 3);
}

TEST_CASE("oscillation onset") {
  const double onset = oscillation_onset(1e-37, 589e-9);
  CHECK(onset == doctest::Approx(0.36).epsilon(0.02 / 0.36));
  CHECK(oscillation_onset(2e-37, 589e-9) == onset);
  // a turning point: U rises before and falls after
  CHECK(reduced_potential(onset - 1e-3) < reduced_potential(onset));
  CHECK(reduced_potential(onset + 1e-3) < reduced_potential(onset));
  CHECK(onset > first_sign_change());
  CHECK_THROWS_AS(oscillation_onset(0.0, 589e-9), std::invalid_argument);
}

TEST_CASE("beam budget") {
  const double total = 7.3e3;
  const auto triad = beam_budget(total, BeamGeometry::Triad);
  REQUIRE(triad.size() == 3);
  for (double b : triad) CHECK(b == doctest::Approx(total / 3.0).epsilon(1e-15));
  const auto six = beam_budget(total, parse_beam_geometry("six_triads"));
  REQUIRE(six.size() == 18);
  CHECK(std::count(six.begin(), six.end(), total / 15.0) == 12);
  CHECK(std::count(six.begin(), six.end(), total / 30.0) == 6);
  for (const auto& list : {triad, six})
    CHECK(std::accumulate(list.begin(), list.end(), 0.0) == doctest::Approx(total).epsilon(1e-15));
  for (double b : beam_budget(0.0, BeamGeometry::SixTriads)) CHECK(b == 0.0);
  CHECK_THROWS_AS(parse_beam_geometry("hexagon"), std::invalid_argument);
  CHECK_THROWS_AS(beam_budget(-1.0, BeamGeometry::Triad), std::invalid_argument);
}
