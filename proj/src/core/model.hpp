#pragma once

#include <array>
#include <string>

namespace poromt {

/// Material constants of the porous-elastic beam with microtemperature.
/// `k` is the net microtemperature dissipation k1 - k2.
struct PhysicalParams {
  double rho = 0;    // mass density
  double mu = 0;     // elastic modulus
  double b = 0;      // elastic-porous coupling
  double J = 0;      // equilibrated inertia
  double delta = 0;  // porous stiffness
  double xi = 0;     // porous restoring
  double d = 0;      // porous-thermal coupling
  double alpha = 0;  // thermal capacity
  double kappa = 0;  // thermal conductivity
  double k = 0;      // microtemperature dissipation
  double l = 0;      // domain length

  /// mu*xi - b^2; must be positive for the energy to be a norm.
  double ellipticity() const noexcept { return mu * xi - b * b; }

  bool operator==(const PhysicalParams&) const = default;
};

/// Field names in declaration order, used for diagnostics and config keys.
inline constexpr std::array<const char*, 11> kParamNames = {
    "rho", "mu", "b", "J", "delta", "xi", "d", "alpha", "kappa", "k", "l"};

/// Values in the same order as kParamNames.
std::array<double, 11> param_values(const PhysicalParams& p) noexcept;

/// Checks positivity of every field and mu*xi - b^2 > 0. Throws
/// ValidationError listing every violated constraint.
PhysicalParams validate_params(const PhysicalParams& raw);

/// The material set used in the reference experiment, with delta = kappa =
/// 0.001 and l = 1.
PhysicalParams reference_params() noexcept;

/// Constants of the exponential-stability argument: multiplier weights,
/// Young parameters, the equivalence bounds nu1 <= L/E <= nu2 and the
/// resulting rate E(t) <= M E(0) exp(-omega t).
struct LyapunovConstants {
  double cp = 0;  // Poincare constant, length^2
  double C1 = 0, C2 = 0, C3 = 0;
  double eps1 = 0, eps2 = 0, eps3 = 0;
  double N0 = 0, N1 = 0, N2 = 0;
  double nu1 = 0, nu2 = 0;
  std::array<double, 5> zeta{};
  double beta = 0;
  double omega = 0;  // 1/time
  double M = 0;
};

/// Evaluates every constant in closed form. Strict lower bounds on N1 and
/// N2 are met with a factor 2; the Poincare constant is the sharp (l/pi)^2.
LyapunovConstants lyapunov_constants(const PhysicalParams& p);

std::string format_constants(const LyapunovConstants& c);

}  // namespace poromt
