#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "fem.hpp"
#include "model.hpp"
#include "timestepper.hpp"

namespace poromt {

/// Scalar time factor with derivatives up to third order.
struct TimeFactor {
  enum class Kind { Exp, Cos, Quadratic };
  Kind kind = Kind::Exp;
  double a = 0, b = 0, c = 0;  // Exp: e^{-a t}; Cos: cos(a t + b); Quadratic: a + b t + c t^2

  double eval(double t, int order) const;

  static TimeFactor exp_decay(double rate) { return {Kind::Exp, rate, 0, 0}; }
  static TimeFactor cosine(double freq, double phase = 0) { return {Kind::Cos, freq, phase, 0}; }
  static TimeFactor quadratic(double c0, double c1, double c2) { return {Kind::Quadratic, c0, c1, c2}; }
};

/// Spatial factor vanishing at x = 0 and x = l.
struct SpaceFactor {
  enum class Kind { Sine, Bubble };
  Kind kind = Kind::Sine;
  int mode = 1;  // Sine: sin(mode pi x / l); Bubble: x (l - x) / l^2

  double eval(double x, double l, int order) const;
};

/// amplitude * time(t) * space(x)
struct SeparableField {
  double amplitude = 1.0;
  TimeFactor time;
  SpaceFactor space;

  /// d^{t_order}/dt d^{x_order}/dx of the field.
  double eval(double x, double t, double l, int t_order, int x_order) const {
    return amplitude * time.eval(t, t_order) * space.eval(x, l, x_order);
  }
};

/// Closed-form (u, phi, w) used as an exact reference.
struct ManufacturedSolution {
  std::string name;
  double l = 1.0;
  SeparableField u, phi, w;

  double U(double x, double t, int t_order = 0, int x_order = 0) const { return u.eval(x, t, l, t_order, x_order); }
  double Phi(double x, double t, int t_order = 0, int x_order = 0) const { return phi.eval(x, t, l, t_order, x_order); }
  double W(double x, double t, int t_order = 0, int x_order = 0) const { return w.eval(x, t, l, t_order, x_order); }

  /// u = phi = w = e^{-t} sin(pi x / l)
  static ManufacturedSolution exp_sine(double l);
  /// u = cos(2t) sin(pi x/l), phi = e^{-t/2} sin(2 pi x/l), w = (1 + t + t^2/2) sin(pi x/l)
  static ManufacturedSolution mixed(double l);
  /// polynomial-in-x bubbles with exponential time factors
  static ManufacturedSolution bubble(double l);
  static ManufacturedSolution zero(double l);

  /// "exp_sine", "mixed", "bubble" or "zero"; throws InvalidArgument otherwise.
  static ManufacturedSolution by_name(const std::string& name, double l);
};

/// Pointwise residuals of the three field equations for the manufactured fields.
struct ForcingValues {
  double f1 = 0, f2 = 0, f3 = 0;
};

ForcingValues forcing_at(const ManufacturedSolution& ms, const PhysicalParams& p, double x, double t);

/// Nodal loads Z * I_h f at time t.
ForcingProvider manufactured_forcing(const ManufacturedSolution& ms, const PhysicalParams& p,
                                     const Mesh1D& mesh, const FemMatrices& mats);

/// Nodal interpolants of ms at t = 0 and t = dt for both history levels.
InitialData manufactured_initial_data(const ManufacturedSolution& ms, double dt);

struct ErrorNorms {
  double e_uvel = 0;    // ||u_vel - I u_t||_Z
  double e_phivel = 0;  // ||phi_vel - I phi_t||_Z
  double e_ux = 0;      // ||u - I u||_T
  double e_phix = 0;    // ||phi - I phi||_T
  double e_phi = 0;     // ||phi - I phi||_Z
  double e_w = 0;       // ||w - I w||_Z

  std::array<double, 6> as_array() const { return {e_uvel, e_phivel, e_ux, e_phix, e_phi, e_w}; }
};

inline constexpr std::array<const char*, 6> kErrorNames = {"e_uvel", "e_phivel", "e_ux",
                                                           "e_phix", "e_phi",    "e_w"};

/// Errors at a recorded level (a frame, or the final state). Throws
/// StepNotRecorded otherwise.
ErrorNorms error_norms(const Trajectory& traj, const ManufacturedSolution& ms, double t_n);

struct ConvergenceLevel {
  int s = 0;
  double h = 0;
  double dt = 0;
  ErrorNorms errors;
};

struct ConvergenceSweep {
  std::vector<ConvergenceLevel> levels;
  std::array<double, 6> orders{};  // least-squares slope of log error vs log h (or log dt)
};

struct ConvergenceReport {
  ConvergenceSweep space;  // h halved, dt frozen at (finest dt)/8
  ConvergenceSweep time;   // dt halved, h frozen at (finest h)/8
};

/// Least-squares slope of log(y) against log(x); NaN when any y <= 0.
double fitted_order(std::span<const double> x, std::span<const double> y);

/// Two refinement sweeps starting from base.s and base.dt. Levels run
/// concurrently on `workers` threads (0: hardware concurrency).
ConvergenceReport convergence_study(const RunConfig& base, const ManufacturedSolution& ms,
                                    int levels, unsigned workers = 0);

}  // namespace poromt
