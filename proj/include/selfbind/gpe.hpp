#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "selfbind/variational.hpp"

namespace selfbind {

/// Uniform radial grid R_i = i h, i = 1..n; the node n+1 sits at R_max where
/// psi is clamped to zero.
struct RadialGrid {
  int n_points = 0;
  double r_max = 0.0;  // m
  double spacing = 0.0;
  Eigen::VectorXd nodes;

  /// Throws std::invalid_argument for n < 256 or r_max <= 0.
  static RadialGrid make(int n_points, double r_max);
};

/// Grid with R_max = 10 x the variational R_rms estimate (or lambda when unbound).
RadialGrid suggest_grid(const AnsatzConfig& cfg, int n_points = 1024);

/// Precomputed isotropic-kernel convolution on a radial grid:
///   Phi(R) = (2 pi / R) int_0^inf s rho(s) [J(R+s) - J(|R-s|)] ds,
///   J(t) = int_0^t t' U(t') dt'.
/// J is tabulated at 40 points per quarter wavelength (half an oscillation)
/// and interpolated with cubic Hermite using the exact slope t U(t).
class HartreeOperator {
 public:
  /// Throws std::invalid_argument when the full kernel is under-resolved
  /// (fewer than 20 grid points per lambda/2).
  HartreeOperator(const RadialGrid& grid, KernelType kernel, double coupling, double wavelength);

  /// Phi at every node, J. rho in m^-3, one sample per node.
  Eigen::VectorXd apply(const Eigen::VectorXd& rho) const;

  /// J(t) in units of u * lambda, t in units of lambda.
  double reduced_antiderivative(double t) const;

  const Eigen::MatrixXd& matrix() const { return matrix_; }

 private:
  KernelType kernel_;
  double table_step_ = 0.0;
  std::vector<double> table_;
  std::vector<double> slope_;
  Eigen::MatrixXd matrix_;
};

Eigen::VectorXd hartree_potential(const RadialGrid& grid, const Eigen::VectorXd& rho,
                                  KernelType kernel, double coupling, double wavelength);

/// Total (not per-particle) energies on the grid, J.
struct GridEnergies {
  double kinetic = 0.0;
  double trap = 0.0;
  double swave = 0.0;
  double gravitational = 0.0;
  double total() const { return kinetic + trap + swave + gravitational; }
};

struct GroundState {
  RadialGrid grid;
  Eigen::VectorXd psi;        // m^-3/2
  Eigen::VectorXd density;    // m^-3
  Eigen::VectorXd potential;  // self-consistent nonlocal part Phi, J
  double atom_number = 0.0;
  double mu = 0.0;            // J
  double r_rms = 0.0;         // m
  int iterations = 0;
  double residual = 0.0;      // |(H - mu) chi| / |mu chi|
  GridEnergies energies;
  std::vector<double> energy_history;  // total energy after every accepted step
  // physics needed for diagnostics
  double mass = 0.0;
  double contact_coupling = 0.0;
  double trap_frequency = 0.0;
};

struct GpeOptions {
  int max_iterations = 100000;
  double tolerance = 1e-9;                 // on the step-to-step relative change of mu
  std::optional<double> initial_width;     // Gaussian b, m; default from the variational w*
};

/// Imaginary-time relaxation of chi = R psi: backward Euler on
/// T + V[chi_old] - mu (the potential is evaluated from the previous iterate and
/// enters the tridiagonal solve), renormalised to N after every step. The step
/// adapts: it grows after an energy decrease and is halved (and the step
/// retried) whenever the energy would rise.
/// Throws ConvergenceError / CollapseError.
GroundState solve_ground(const AnsatzConfig& cfg, const RadialGrid& grid,
                         const GpeOptions& opts = {});

struct VirialReport {
  GridEnergies energies;
  double mu = 0.0;
  /// (E_kin + E_trap + 2 E_swave + 2 E_grav) / N
  double mu_from_terms = 0.0;
};

VirialReport virial_report(const GroundState& state);

}  // namespace selfbind
