#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "errors.hpp"

namespace poromt {

std::array<double, 11> param_values(const PhysicalParams& p) noexcept {
  return {p.rho, p.mu, p.b, p.J, p.delta, p.xi, p.d, p.alpha, p.kappa, p.k, p.l};
}

PhysicalParams validate_params(const PhysicalParams& raw) {
  std::vector<Violation> violations;
  const auto values = param_values(raw);
  for (std::size_t i = 0; i < values.size(); ++i) {
    // !(v > 0) also catches NaN
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      violations.push_back({ErrorCode::NonPositiveParameter, kParamNames[i], values[i]});
    }
  }
  const double e = raw.ellipticity();
  if (!(e > 0.0)) {
    violations.push_back({ErrorCode::EllipticityViolated, "mu*xi-b^2", e});
  }
  if (!violations.empty()) throw ValidationError(std::move(violations));
  return raw;
}

PhysicalParams reference_params() noexcept {
  PhysicalParams p;
  p.rho = p.d = p.alpha = p.b = p.xi = p.J = 0.001;
  p.k = 1.0;
  p.mu = 0.01;
  p.delta = p.kappa = 0.001;
  p.l = 1.0;
  return p;
}

LyapunovConstants lyapunov_constants(const PhysicalParams& p) {
  const double sxi = std::sqrt(p.xi);
  const double reduced_mu = p.mu - p.b * p.b / p.xi;

  LyapunovConstants c;
  c.cp = (p.l / std::numbers::pi) * (p.l / std::numbers::pi);
  c.C1 = p.J * sxi + p.delta * p.rho * p.b / (p.mu * sxi);
  c.eps2 = p.J * p.b / (2.0 * sxi);

  // velocity-gradient budget the G multiplier has to absorb
  const double grad_budget = p.J * p.mu / p.b + 2.0 * p.rho * c.cp;
  c.N2 = 2.0 * (2.0 * sxi / (p.J * p.b)) * grad_budget;
  c.eps3 = p.rho / c.N2;
  c.eps1 = p.J * p.rho / (p.b * c.N2);

  const double c1_over_d_sq = c.C1 * c.C1 / (p.d * p.d);
  c.C2 = p.alpha * p.alpha * c1_over_d_sq / (2.0 * c.eps1) +
         p.k * p.k * c1_over_d_sq / (2.0 * c.eps3);
  c.C3 = p.kappa * p.kappa * c1_over_d_sq / (2.0 * c.eps2) + p.d * p.d / (2.0 * sxi);

  // N3 in the published max{} is read as N2
  const double porous_mix = p.delta * p.rho * p.b / (p.mu * sxi);
  c.N0 = std::max({
      (p.rho + c.N2 * p.alpha * c.C1 / p.d) / p.rho,
      (p.rho * c.cp + p.J * p.mu / p.b) / reduced_mu,
      (p.b / (p.J * p.mu)) * (p.J * p.mu / p.b + c.N2 * p.J + c.N2 * porous_mix),
      c.N2 * p.J,
      c.N2 * c.cp * p.rho * p.b / (p.mu * sxi),
      c.N2 * c.C1 / p.d,
  });
  c.N1 = 2.0 * std::max({c.N0, c.N2 * c.C2 / p.k, c.N2 * c.C3 / p.kappa});
  c.nu1 = c.N1 - c.N0;
  c.nu2 = c.N1 + c.N0;

  c.zeta = {
      p.rho - c.N2 * c.eps3 / 2.0,
      p.J * p.rho / p.b - c.N2 * c.eps1 / 2.0,
      c.N2 * p.J * p.b / (2.0 * sxi) - grad_budget,
      c.N1 * p.k - c.N2 * c.C2,
      c.N1 * p.kappa - c.N2 * c.C3,
  };
  c.beta = 2.0 * std::min(1.0, *std::min_element(c.zeta.begin(), c.zeta.end()));
  c.omega = c.beta / c.nu2;
  c.M = c.nu2 / c.nu1;
  return c;
}

std::string format_constants(const LyapunovConstants& c) {
  std::ostringstream os;
  os.precision(17);
  os << "cp = " << c.cp << '\n'
     << "C1 = " << c.C1 << '\n'
     << "C2 = " << c.C2 << '\n'
     << "C3 = " << c.C3 << '\n'
     << "eps1 = " << c.eps1 << '\n'
     << "eps2 = " << c.eps2 << '\n'
     << "eps3 = " << c.eps3 << '\n'
     << "N0 = " << c.N0 << '\n'
     << "N1 = " << c.N1 << '\n'
     << "N2 = " << c.N2 << '\n'
     << "nu1 = " << c.nu1 << '\n'
     << "nu2 = " << c.nu2 << '\n';
  for (std::size_t i = 0; i < c.zeta.size(); ++i) {
    os << "zeta" << i + 1 << " = " << c.zeta[i] << '\n';
  }
  os << "beta = " << c.beta << '\n'
     << "omega = " << c.omega << '\n'
     << "M = " << c.M << '\n';
  return os.str();
}

}  // namespace poromt
