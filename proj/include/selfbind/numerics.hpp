#pragma once

// Small deterministic numerical kernels: adaptive Gauss-Kronrod panels,
// golden-section search and bisection. Header-only because every entry point
// is templated on the callable.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "selfbind/errors.hpp"

namespace selfbind::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (x[1], x[3], x[5], x[7]).
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kronrod_w[7];
  double g = fc * gauss_w[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = hl * kronrod_x[i];
    const double s = f(c - dx) + f(c + dx);
    k += kronrod_w[i] * s;
    if (i % 2 == 1) g += gauss_w[i / 2] * s;
  }
  return {k * hl, std::abs((k - g) * hl)};
}

template <typename F>
void adapt(F& f, double a, double b, double whole, double abs_tol, double rel_tol, int depth,
           QuadratureResult& acc) {
  auto [v, e] = gk15(f, a, b);
  acc.evaluations += 15;
  const double tol = std::max(abs_tol, rel_tol * std::abs(v));
  if (e <= tol || std::abs(b - a) <= 1e-15 * std::max(1.0, std::abs(a))) {
    acc.value += v;
    acc.error += e;
    return;
  }
  if (depth <= 0)
    throw QuadratureError("adaptive Gauss-Kronrod did not converge on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "] (error estimate " + std::to_string(e) +
                          ")");
  const double m = 0.5 * (a + b);
  adapt(f, a, m, whole, 0.5 * abs_tol, rel_tol, depth - 1, acc);
  adapt(f, m, b, whole, 0.5 * abs_tol, rel_tol, depth - 1, acc);
}

}  // namespace detail

/// Adaptive G7/K15 on one panel. Bisects until the Kronrod-Gauss difference
/// drops below max(abs_tol, rel_tol*|panel|); throws QuadratureError when the
/// recursion depth is exhausted.
template <typename F>
QuadratureResult integrate_panel(F&& f, double a, double b, double abs_tol, double rel_tol = 1e-12,
                                 int max_depth = 30) {
  QuadratureResult acc;
  if (a == b) return acc;
  detail::adapt(f, a, b, 0.0, abs_tol, rel_tol, max_depth, acc);
  return acc;
}

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for a minimum of f inside [lo, hi]. Stops when the
/// bracket is narrower than rel_tol * |x|.
template <typename F>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double rel_tol = 1e-6,
                                     int max_iter = 500) {
  if (!(lo < hi)) throw std::invalid_argument("golden_section_minimize: empty bracket");
  constexpr double inv_phi = 0.6180339887498948482045868;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  for (; it < max_iter; ++it) {
    if (std::abs(b - a) <= rel_tol * std::max(std::abs(c), std::abs(d))) break;
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (it == max_iter) throw ConvergenceError("golden-section search hit the iteration limit");
  return fc < fd ? GoldenResult{c, fc, it} : GoldenResult{d, fd, it};
}

/// Bisection on a predicate that is false at `lo` and true at `hi` (or vice
/// versa). Returns the midpoint of the final bracket. Width test is relative.
template <typename Pred>
double bisect_predicate(Pred&& pred, double lo, double hi, double rel_tol, int max_iter = 200) {
  const bool at_lo = pred(lo);
  if (at_lo == pred(hi)) throw std::domain_error("bisect_predicate: endpoints do not bracket");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (std::abs(hi - lo) <= rel_tol * std::abs(mid)) return mid;
    if (pred(mid) == at_lo)
      lo = mid;
    else
      hi = mid;
  }
  throw ConvergenceError("bisection hit the iteration limit");
}

/// Root of a continuous function with a sign change on [lo, hi].
template <typename F>
double bisect_root(F&& f, double lo, double hi, double abs_tol, int max_iter = 200) {
  double flo = f(lo);
  const double fhi = f(hi);
  if ((flo < 0) == (fhi < 0)) throw std::domain_error("bisect_root: no sign change in bracket");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= abs_tol) return mid;
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw ConvergenceError("bisection hit the iteration limit");
}

}  // namespace selfbind::numerics
