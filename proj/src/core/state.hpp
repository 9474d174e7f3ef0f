#pragma once

#include "fem.hpp"

namespace poromt {

/// Nodal coefficients of (u, phi, w) at levels n, n-1 and, for u, n-2.
/// Velocities are backward differences, never independent unknowns.
struct SolverState {
  NodalVector u_curr, u_prev, u_prev2;
  NodalVector phi_curr, phi_prev;
  NodalVector w_curr, w_prev;
  int n = 1;
  double dt = 0;

  std::size_t size() const noexcept { return u_curr.size(); }

  /// (u^n - u^{n-1}) / dt
  NodalVector u_velocity() const;
  /// (u^n - 2u^{n-1} + u^{n-2}) / dt^2; needs n >= 2.
  NodalVector u_acceleration() const;
  /// (phi^n - phi^{n-1}) / dt
  NodalVector phi_velocity() const;

  /// Throws InsufficientHistory when n < 2.
  void require_history() const;
};

}  // namespace poromt
