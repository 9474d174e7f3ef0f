#pragma once

#include <span>
#include <vector>

#include "fem.hpp"
#include "model.hpp"
#include "state.hpp"

namespace poromt {

/// The seven quadratic terms of the discrete energy E_n.
struct EnergyBreakdown {
  double kinetic = 0;      // 1/2 rho ||u_vel||^2
  double accel = 0;        // 1/2 (J rho / b) ||u_acc||^2
  double elastic = 0;      // 1/2 (mu - b^2/xi) ||u_x||^2
  double vel_grad = 0;     // 1/2 (J mu / b) ||u_vel_x||^2
  double porous_grad = 0;  // 1/2 delta ||phi_x||^2
  double coupled = 0;      // 1/2 ||(b/sqrt(xi)) u_x + sqrt(xi) phi||^2
  double thermal = 0;      // 1/2 alpha ||w||^2
  double total = 0;
};

/// Read-only view of the discrete fields the energy and the Lyapunov
/// functional are built from.
struct FieldView {
  std::span<const double> u, phi, w;
  std::span<const double> u_vel;  // discrete u_t
  std::span<const double> u_acc;  // discrete u_tt
};

FieldView view_of(const SolverState& state, const NodalVector& u_vel, const NodalVector& u_acc);

EnergyBreakdown discrete_energy(const FieldView& fields, const PhysicalParams& p,
                                const FemMatrices& mats);

/// Throws InsufficientHistory when the state is below level 2.
EnergyBreakdown discrete_energy(const SolverState& state, const PhysicalParams& p,
                                const FemMatrices& mats);

/// ||(b/sqrt(xi)) u_x + sqrt(xi) phi||^2 by exact integration element by
/// element. u_x is piecewise constant, so the integrand is a discontinuous
/// piecewise quadratic and is not representable in the nodal basis.
double coupled_norm_squared(std::span<const double> u, std::span<const double> phi,
                            const PhysicalParams& p, double h);

/// F, G and L = N1 E + F + N2 G with the margins of nu1 E <= L <= nu2 E.
/// lower_margin = L - nu1 E and upper_margin = nu2 E - L are evaluated as
/// N0 E + (F + N2 G) and N0 E - (F + N2 G) to avoid cancelling against N1 E.
struct LyapunovValues {
  double F = 0;
  double G = 0;
  double L = 0;
  double E = 0;
  double lower_margin = 0;
  double upper_margin = 0;

  double margin() const noexcept { return lower_margin < upper_margin ? lower_margin : upper_margin; }
};

LyapunovValues lyapunov_values(const FieldView& fields, double energy, const PhysicalParams& p,
                               const FemMatrices& mats, const LyapunovConstants& consts);

LyapunovValues lyapunov_values(const SolverState& state, const PhysicalParams& p,
                               const FemMatrices& mats, const LyapunovConstants& consts);

struct DissipationReport {
  std::vector<int> levels;          // n = 3, 4, ...
  std::vector<double> residuals;    // r_n
  std::vector<double> allowances;   // tol_rel * E_{n-1} / dt
  double max_residual = 0;
  double max_scaled = 0;            // max r_n / (E_{n-1}/dt); -inf-safe 0 if no steps
  int violations = 0;
  int first_violation = -1;

  bool ok() const noexcept { return violations == 0; }
};

inline constexpr double kDissipationTolerance = 1e-9;

struct Trajectory;

/// r_n = (E_n - E_{n-1})/dt + kappa ||w_x^n||^2 + k ||w^n||^2 for every pair
/// of consecutive solved levels; flags r_n > tol * E_{n-1} / dt.
DissipationReport dissipation_check(const Trajectory& traj, const PhysicalParams& p,
                                    double tol_rel = kDissipationTolerance);

/// Least-squares line through (t, log E) on the trailing window.
struct DecayFit {
  double omega_hat = 0;
  double log_intercept = 0;
  double r_squared = 0;
  std::size_t samples = 0;
};

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> energy,
                        double tail_fraction);

}  // namespace poromt
