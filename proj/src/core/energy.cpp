#include "energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "timestepper.hpp"

namespace poromt {

FieldView view_of(const SolverState& state, const NodalVector& u_vel, const NodalVector& u_acc) {
  return {state.u_curr, state.phi_curr, state.w_curr, u_vel, u_acc};
}

double coupled_norm_squared(std::span<const double> u, std::span<const double> phi,
                            const PhysicalParams& p, double h) {
  require_size(phi, u.size(), "porosity vector");
  const double gu = p.b / std::sqrt(p.xi);
  const double gphi = std::sqrt(p.xi);
  const std::size_t m = u.size();
  double acc = 0.0;
  // elements j = 0..m, between global nodes j and j+1; boundary values are 0
  for (std::size_t j = 0; j <= m; ++j) {
    const double u_left = j == 0 ? 0.0 : u[j - 1];
    const double u_right = j == m ? 0.0 : u[j];
    const double phi_left = j == 0 ? 0.0 : phi[j - 1];
    const double phi_right = j == m ? 0.0 : phi[j];
    const double slope = (u_right - u_left) / h;
    const double g0 = gu * slope + gphi * phi_left;
    const double g1 = gu * slope + gphi * phi_right;
    acc += h / 3.0 * (g0 * g0 + g0 * g1 + g1 * g1);
  }
  return acc;
}

EnergyBreakdown discrete_energy(const FieldView& f, const PhysicalParams& p,
                                const FemMatrices& mats) {
  const std::size_t m = mats.size();
  for (auto v : {f.u, f.phi, f.w, f.u_vel, f.u_acc}) require_size(v, m, "energy field");

  EnergyBreakdown e;
  e.kinetic = 0.5 * p.rho * l2_squared(mats, f.u_vel);
  e.accel = 0.5 * (p.J * p.rho / p.b) * l2_squared(mats, f.u_acc);
  e.elastic = 0.5 * (p.mu - p.b * p.b / p.xi) * h1_semi_squared(mats, f.u);
  e.vel_grad = 0.5 * (p.J * p.mu / p.b) * h1_semi_squared(mats, f.u_vel);
  e.porous_grad = 0.5 * p.delta * h1_semi_squared(mats, f.phi);
  e.coupled = 0.5 * coupled_norm_squared(f.u, f.phi, p, mats.h);
  e.thermal = 0.5 * p.alpha * l2_squared(mats, f.w);
  e.total = e.kinetic + e.accel + e.elastic + e.vel_grad + e.porous_grad + e.coupled + e.thermal;
  return e;
}

EnergyBreakdown discrete_energy(const SolverState& state, const PhysicalParams& p,
                                const FemMatrices& mats) {
  state.require_history();
  const NodalVector vel = state.u_velocity();
  const NodalVector acc = state.u_acceleration();
  return discrete_energy(view_of(state, vel, acc), p, mats);
}

LyapunovValues lyapunov_values(const FieldView& f, double energy, const PhysicalParams& p,
                               const FemMatrices& mats, const LyapunovConstants& c) {
  const double sxi = std::sqrt(p.xi);

  LyapunovValues out;
  out.E = energy;
  out.F = p.rho * mats.Z.form(f.u_vel, f.u) + (p.J * p.mu / p.b) * mats.T.form(f.u_vel, f.u);

  // (u_vel_x, phi) = sum_a phi_a (u_vel', psi_a) = phi^T X u_vel
  const double vel_x_phi = mats.X.form(f.phi, f.u_vel);
  const double vel_x_coupled = (p.b / sxi) * mats.T.form(f.u_vel, f.u) + sxi * vel_x_phi;
  out.G = -p.J * vel_x_coupled - p.delta * p.rho * p.b / (p.mu * sxi) * vel_x_phi +
          (p.alpha * c.C1 / p.d) * mats.Z.form(f.w, f.u_vel);

  const double perturbation = out.F + c.N2 * out.G;
  out.L = c.N1 * energy + perturbation;
  out.lower_margin = c.N0 * energy + perturbation;
  out.upper_margin = c.N0 * energy - perturbation;
  return out;
}

LyapunovValues lyapunov_values(const SolverState& state, const PhysicalParams& p,
                               const FemMatrices& mats, const LyapunovConstants& consts) {
  state.require_history();
  const NodalVector vel = state.u_velocity();
  const NodalVector acc = state.u_acceleration();
  const FieldView view = view_of(state, vel, acc);
  return lyapunov_values(view, discrete_energy(view, p, mats).total, p, mats, consts);
}

DissipationReport dissipation_check(const Trajectory& traj, const PhysicalParams& p,
                                    double tol_rel) {
  DissipationReport report;
  const double dt = traj.dt;
  for (std::size_t i = 1; i < traj.steps.size(); ++i) {
    const StepRecord& prev = traj.steps[i - 1];
    const StepRecord& cur = traj.steps[i];
    const double r = (cur.energy.total - prev.energy.total) / dt + p.kappa * cur.w_h1_sq +
                     p.k * cur.w_l2_sq;
    const double scale = prev.energy.total / dt;
    const double allowance = tol_rel * scale;
    report.levels.push_back(cur.n);
    report.residuals.push_back(r);
    report.allowances.push_back(allowance);
    if (report.residuals.size() == 1 || r > report.max_residual) report.max_residual = r;
    if (scale > 0.0) {
      const double scaled = r / scale;
      if (report.residuals.size() == 1 || scaled > report.max_scaled) report.max_scaled = scaled;
    }
    if (r > allowance) {
      if (report.violations == 0) report.first_violation = cur.n;
      ++report.violations;
    }
  }
  return report;
}

DecayFit fit_decay_rate(std::span<const double> t, std::span<const double> energy,
                        double tail_fraction) {
  if (t.size() != energy.size()) {
    throw Error(ErrorCode::DimensionMismatch, "time and energy series differ in length");
  }
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "tail fraction must lie in (0, 1]");
  }
  const std::size_t total = t.size();
  const auto window = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(total)));
  if (window < 3 || window > total) {
    throw Error(ErrorCode::WindowTooSmall,
                "decay fit needs at least 3 samples, window has " + std::to_string(window));
  }
  const std::size_t first = total - window;

  std::vector<double> x(window), y(window);
  for (std::size_t i = 0; i < window; ++i) {
    const double e = energy[first + i];
    if (!(e > 0.0)) {
      throw Error(ErrorCode::NonPositiveEnergy,
                  "energy sample " + std::to_string(first + i) + " is not positive");
    }
    x[i] = t[first + i];
    y[i] = std::log(e);
  }

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(window);
  my /= static_cast<double>(window);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "decay fit needs distinct sample times");
  }

  DecayFit fit;
  const double slope = sxy / sxx;
  fit.omega_hat = -slope;
  fit.log_intercept = my - slope * mx;
  fit.samples = window;
  if (syy == 0.0) {
    fit.r_squared = 1.0;  // constant series is fitted exactly
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < window; ++i) {
      const double r = y[i] - (fit.log_intercept + slope * x[i]);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

}  // namespace poromt
