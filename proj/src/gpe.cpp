#include "selfbind/gpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "selfbind/errors.hpp"

namespace selfbind {

using constants::hbar;
using constants::pi;

namespace {

constexpr double kTablePointsPerHalfOscillation = 40.0;
constexpr double kMinPointsPerHalfWavelength = 20.0;

// 8-point Gauss-Legendre on [-1, 1].
constexpr double kGlX[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                            0.9602898564975363};
constexpr double kGlW[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                            0.1012285362903763};

// Thomas solve of (diag, off, off) against rhs, in place.
void solve_symmetric_tridiagonal(const Eigen::VectorXd& diag, double off, Eigen::VectorXd& rhs,
                                 Eigen::VectorXd& work) {
  const Eigen::Index n = diag.size();
  work.resize(n);
  double beta = diag[0];
  rhs[0] /= beta;
  for (Eigen::Index i = 1; i < n; ++i) {
    work[i] = off / beta;
    beta = diag[i] - off * work[i];
    rhs[i] = (rhs[i] - off * rhs[i - 1]) / beta;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) rhs[i] -= work[i + 1] * rhs[i + 1];
}

}  // namespace

RadialGrid RadialGrid::make(int n_points, double r_max) {
  if (n_points < 256) throw std::invalid_argument("radial grid needs at least 256 points");
  if (!(r_max > 0.0)) throw std::invalid_argument("radial grid needs R_max > 0");
  RadialGrid g;
  g.n_points = n_points;
  g.r_max = r_max;
  g.spacing = r_max / (n_points + 1);
  g.nodes = Eigen::VectorXd::LinSpaced(n_points, 1.0, n_points) * g.spacing;
  return g;
}

RadialGrid suggest_grid(const AnsatzConfig& cfg, int n_points) {
  const auto v = minimize_width(cfg);
  const double r_rms = v.r_rms ? *v.r_rms : cfg.drive.wavelength;
  return RadialGrid::make(n_points, 10.0 * r_rms);
}

HartreeOperator::HartreeOperator(const RadialGrid& grid, KernelType kernel, double coupling,
                                 double wavelength)
    : kernel_(kernel) {
  if (!(wavelength > 0.0)) throw std::invalid_argument("HartreeOperator: wavelength must be > 0");
  const double lambda = wavelength;
  if (kernel == KernelType::Full && grid.spacing > 0.5 * lambda / kMinPointsPerHalfWavelength)
    throw std::invalid_argument("radial grid too coarse for the oscillating kernel: need >= 20 "
                                "points per lambda/2");

  if (kernel == KernelType::Full) {
    table_step_ = 0.25 / kTablePointsPerHalfOscillation;
    const double t_max = 2.0 * grid.r_max / lambda + 4.0 * table_step_;
    const auto count = static_cast<std::size_t>(std::ceil(t_max / table_step_)) + 1;
    table_.assign(count, 0.0);
    slope_.assign(count, 0.0);
    slope_[0] = -1.0;
    for (std::size_t k = 1; k < count; ++k) {
      const double a = (k - 1) * table_step_, b = k * table_step_;
      const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
      double acc = 0.0;
      for (int q = 0; q < 4; ++q)
        acc += kGlW[q] * (reduced_potential_times_r(c - hl * kGlX[q]) +
                          reduced_potential_times_r(c + hl * kGlX[q]));
      table_[k] = table_[k - 1] + hl * acc;
      slope_[k] = reduced_potential_times_r(b);
    }
  }

  const int n = grid.n_points;
  const double h = grid.spacing;
  matrix_.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const double s = grid.nodes[j];
    for (int i = 0; i < n; ++i) {
      const double r = grid.nodes[i];
      const double dj = reduced_antiderivative((r + s) / lambda) -
                        reduced_antiderivative(std::abs(r - s) / lambda);
      matrix_(i, j) = 2.0 * pi / r * h * s * coupling * lambda * dj;
    }
  }
}

double HartreeOperator::reduced_antiderivative(double t) const {
  if (kernel_ == KernelType::NearZone) return -t;
  const double pos = t / table_step_;
  const auto k = static_cast<std::size_t>(pos);
  if (k + 1 >= table_.size()) throw std::out_of_range("J table queried beyond its range");
  const double x = pos - k;
  const double x2 = x * x, x3 = x2 * x;
  const double h00 = 2 * x3 - 3 * x2 + 1, h10 = x3 - 2 * x2 + x;
  const double h01 = -2 * x3 + 3 * x2, h11 = x3 - x2;
  return h00 * table_[k] + h10 * table_step_ * slope_[k] + h01 * table_[k + 1] +
         h11 * table_step_ * slope_[k + 1];
}

Eigen::VectorXd HartreeOperator::apply(const Eigen::VectorXd& rho) const {
  if (rho.size() != matrix_.cols())
    throw std::invalid_argument("density sample count does not match the grid");
  if (!rho.allFinite()) throw std::invalid_argument("density is not normalizable (non-finite)");
  return matrix_ * rho;
}

Eigen::VectorXd hartree_potential(const RadialGrid& grid, const Eigen::VectorXd& rho,
                                  KernelType kernel, double coupling, double wavelength) {
  return HartreeOperator(grid, kernel, coupling, wavelength).apply(rho);
}

namespace {

struct Physics {
  double kin_coeff;  // hbar^2 / (2 m h^2)
  double g;
  Eigen::VectorXd v_ext;
};

GridEnergies grid_energies(const Eigen::VectorXd& chi, const Eigen::VectorXd& rho,
                           const Eigen::VectorXd& phi, const Physics& ph, double h) {
  const Eigen::Index n = chi.size();
  double grad = chi[0] * chi[0] + chi[n - 1] * chi[n - 1];
  for (Eigen::Index i = 0; i + 1 < n; ++i) grad += (chi[i + 1] - chi[i]) * (chi[i + 1] - chi[i]);
  const double w = 4.0 * pi * h;
  const Eigen::ArrayXd chi2 = chi.array().square();
  GridEnergies e;
  e.kinetic = w * ph.kin_coeff * grad;
  e.trap = w * (ph.v_ext.array() * chi2).sum();
  e.swave = 0.5 * w * ph.g * (rho.array() * chi2).sum();
  e.gravitational = 0.5 * w * (phi.array() * chi2).sum();
  return e;
}

}  // namespace

GroundState solve_ground(const AnsatzConfig& cfg, const RadialGrid& grid, const GpeOptions& opts) {
  cfg.validate();
  const double n_atoms = cfg.atom_number;
  const double m = cfg.species.mass;
  const double h = grid.spacing;
  const Eigen::VectorXd& r = grid.nodes;
  const double norm_w = 4.0 * pi * h;

  Physics ph;
  ph.kin_coeff = cfg.tf_limit ? 0.0 : hbar * hbar / (2.0 * m * h * h);
  ph.g = cfg.species.contact_coupling();
  ph.v_ext = 0.5 * m * cfg.trap_frequency * cfg.trap_frequency * r.array().square();

  const bool interacting = cfg.drive.coupling != 0.0;
  std::optional<HartreeOperator> hartree;
  if (interacting) hartree.emplace(grid, cfg.kernel, cfg.drive.coupling, cfg.drive.wavelength);

  double b0 = cfg.drive.wavelength;
  if (opts.initial_width) {
    b0 = *opts.initial_width;
  } else if (const auto v = minimize_width(cfg); v.w_star) {
    b0 = *v.w_star * cfg.drive.wavelength;
  }

  Eigen::VectorXd chi = (r.array() * (-0.5 * r.array().square() / (b0 * b0)).exp()).matrix();
  auto renormalize = [&](Eigen::VectorXd& c) { c *= std::sqrt(n_atoms / (norm_w * c.squaredNorm())); };
  renormalize(chi);

  auto evaluate = [&](const Eigen::VectorXd& c, Eigen::VectorXd& rho, Eigen::VectorXd& phi) {
    rho = (c.array() / r.array()).square().matrix();
    phi = interacting ? hartree->apply(rho) : Eigen::VectorXd::Zero(c.size());
    return grid_energies(c, rho, phi, ph, h);
  };
  auto mu_of = [&](const GridEnergies& e) {
    return (e.kinetic + e.trap + 2.0 * e.swave + 2.0 * e.gravitational) / n_atoms;
  };

  Eigen::VectorXd rho, phi, rho_new, phi_new, diag, rhs, work;
  GridEnergies energy = evaluate(chi, rho, phi);
  double mu = mu_of(energy);

  GroundState out;
  out.energy_history.push_back(energy.total());

  auto potential = [&](const Eigen::VectorXd& dens, const Eigen::VectorXd& nonlocal) {
    return (ph.v_ext.array() + ph.g * dens.array() + nonlocal.array()).matrix().eval();
  };

  Eigen::VectorXd v = potential(rho, phi);
  const double e_ref = std::max({std::abs(mu), energy.kinetic / n_atoms,
                                 (v.array() - mu).abs().maxCoeff() * 1e-2,
                                 std::numeric_limits<double>::min()});
  double dt = 0.5 * hbar / e_ref;
  const double dt_max = 64.0 * dt;

  int it = 0;
  bool converged = false;
  for (; it < opts.max_iterations; ++it) {
    // keep 1 + dt (T + V - mu) positive definite: T >= 0, so lambda_min >= min V
    double step = dt;
    const double gap = mu - v.minCoeff();
    if (gap > 0.0) step = std::min(step, 0.5 * hbar / gap);

    bool accepted = false;
    int halvings = 0;
    Eigen::VectorXd candidate;
    GridEnergies trial;
    for (int halving = 0; halving < 60; ++halving) {
      const double k = step / hbar;
      diag = (1.0 + k * (2.0 * ph.kin_coeff + (v.array() - mu))).matrix();
      candidate = chi;
      solve_symmetric_tridiagonal(diag, -k * ph.kin_coeff, candidate, work);
      renormalize(candidate);
      trial = evaluate(candidate, rho_new, phi_new);
      if (trial.total() <= energy.total() + 1e-12 * std::abs(energy.total())) {
        accepted = true;
        break;
      }
      ++halvings;
      step *= 0.5;
      dt = step;
    }
    if (!accepted) throw ConvergenceError("imaginary-time step could not lower the energy");

    chi.swap(candidate);
    rho.swap(rho_new);
    phi.swap(phi_new);
    energy = trial;
    out.energy_history.push_back(energy.total());
    const double mu_new = mu_of(energy);
    v = potential(rho, phi);

    const double r2 = norm_w * (r.array().square() * chi.array().square()).sum() / n_atoms;
    if (std::sqrt(r2) < 4.0 * h)
      throw CollapseError("condensate collapsed below four grid spacings (R_rms = " +
                          std::to_string(std::sqrt(r2)) + " m)");

    const bool small_change = std::abs(mu_new - mu) < opts.tolerance * std::abs(mu_new);
    mu = mu_new;
    if (small_change && halvings == 0) {
      converged = true;
      ++it;
      break;
    }
    dt = std::min(dt_max, 1.25 * dt);
  }
  if (!converged)
    throw ConvergenceError("ground-state relaxation did not converge in " +
                           std::to_string(opts.max_iterations) + " iterations");

  // residual of the discrete eigenproblem (T + V) chi = mu chi
  Eigen::VectorXd hchi = (v.array() - mu + 2.0 * ph.kin_coeff).matrix().cwiseProduct(chi);
  hchi.head(chi.size() - 1) -= ph.kin_coeff * chi.tail(chi.size() - 1);
  hchi.tail(chi.size() - 1) -= ph.kin_coeff * chi.head(chi.size() - 1);

  out.grid = grid;
  out.psi = (chi.array() / r.array()).matrix();
  out.density = rho;
  out.potential = phi;
  out.atom_number = n_atoms;
  out.mu = mu;
  out.r_rms = std::sqrt(norm_w * (r.array().square() * chi.array().square()).sum() / n_atoms);
  out.iterations = it;
  out.residual = hchi.norm() / (std::abs(mu) * chi.norm());
  out.energies = energy;
  out.mass = m;
  out.contact_coupling = ph.g;
  out.trap_frequency = cfg.trap_frequency;

  if (grid.r_max < 8.0 * out.r_rms)
    throw std::domain_error("radial grid too small: R_max must be >= 8 R_rms (" +
                            std::to_string(out.r_rms) + " m)");
  return out;
}

VirialReport virial_report(const GroundState& state) {
  const double h = state.grid.spacing;
  Physics ph;
  ph.kin_coeff = state.mass > 0.0 ? hbar * hbar / (2.0 * state.mass * h * h) : 0.0;
  ph.g = state.contact_coupling;
  ph.v_ext = 0.5 * state.mass * state.trap_frequency * state.trap_frequency *
             state.grid.nodes.array().square();
  const Eigen::VectorXd chi = state.psi.cwiseProduct(state.grid.nodes);

  VirialReport rep;
  rep.energies = grid_energies(chi, state.density, state.potential, ph, h);
  if (state.energies.kinetic == 0.0) rep.energies.kinetic = 0.0;  // TF-limit solve
  rep.mu = state.mu;
  rep.mu_from_terms = (rep.energies.kinetic + rep.energies.trap + 2.0 * rep.energies.swave +
                       2.0 * rep.energies.gravitational) /
                      state.atom_number;
  return rep;
}

}  // namespace selfbind
