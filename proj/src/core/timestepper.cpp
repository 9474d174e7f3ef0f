#include "timestepper.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "errors.hpp"

namespace poromt {

// ---------------------------------------------------------------------------
// SolverState

NodalVector SolverState::u_velocity() const {
  NodalVector v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (u_curr[i] - u_prev[i]) / dt;
  return v;
}

NodalVector SolverState::u_acceleration() const {
  require_history();
  NodalVector v(size());
  const double inv = 1.0 / (dt * dt);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = (u_curr[i] - 2.0 * u_prev[i] + u_prev2[i]) * inv;
  }
  return v;
}

NodalVector SolverState::phi_velocity() const {
  NodalVector v(size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (phi_curr[i] - phi_prev[i]) / dt;
  return v;
}

void SolverState::require_history() const {
  if (n < 2) {
    throw Error(ErrorCode::InsufficientHistory,
                "level " + std::to_string(n) + " has no second backward difference");
  }
}

// ---------------------------------------------------------------------------
// configuration

ProfilePreset ProfilePreset::parse(const std::string& text) {
  if (text == "zero") return {Kind::Zero, 1};
  if (text == "parabola") return {Kind::Parabola, 1};
  constexpr std::string_view prefix = "sine:";
  if (text.starts_with(prefix)) {
    int mode = 0;
    const char* first = text.data() + prefix.size();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, mode);
    if (ec == std::errc() && ptr == last && mode >= 1) return {Kind::Sine, mode};
  }
  throw Error(ErrorCode::Parse, "unknown profile '" + text + "' (expected parabola, zero or sine:<m>)");
}

std::string ProfilePreset::to_string() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Parabola: return "parabola";
    case Kind::Sine: return "sine:" + std::to_string(mode);
  }
  return "zero";
}

Profile ProfilePreset::make(double l) const {
  switch (kind) {
    case Kind::Parabola:
      return [l](double x) { return x * (l - x) / (l * l); };
    case Kind::Sine: {
      const double wave = mode * std::numbers::pi / l;
      return [wave](double x) { return std::sin(wave * x); };
    }
    case Kind::Zero:
      break;
  }
  return [](double) { return 0.0; };
}

int RunConfig::final_level() const { return static_cast<int>(std::lround(t_final / dt)); }

void validate_run_config(const RunConfig& cfg) {
  validate_params(cfg.params);
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  }
  if (!(cfg.t_final >= 2.0 * cfg.dt) || !std::isfinite(cfg.t_final) || cfg.final_level() < 2) {
    throw Error(ErrorCode::InvalidArgument, "t_final must be at least 2*dt");
  }
  if (cfg.output_every < 1) {
    throw Error(ErrorCode::InvalidArgument, "output_every must be at least 1");
  }
}

InitialData initial_data(const RunConfig& cfg) {
  const double l = cfg.params.l;
  InitialData data;
  data.u0 = cfg.init_u0.make(l);
  data.u1 = cfg.init_u1.make(l);
  data.phi0 = cfg.init_phi0.make(l);
  data.phi1 = cfg.init_phi1.make(l);
  data.w0 = cfg.init_w0.make(l);
  data.w1 = data.w0;
  return data;
}

SolverState init_history(const InitialData& data, const Mesh1D& mesh, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  SolverState state;
  state.dt = dt;
  state.n = 1;
  state.u_prev = interpolate_nodal(data.u0, mesh);
  state.u_curr = interpolate_nodal(data.u1, mesh);
  state.u_prev2.assign(state.u_curr.size(), 0.0);
  state.phi_prev = interpolate_nodal(data.phi0, mesh);
  state.phi_curr = interpolate_nodal(data.phi1, mesh);
  state.w_prev = interpolate_nodal(data.w0, mesh);
  state.w_curr = interpolate_nodal(data.w1, mesh);
  return state;
}

SolverState init_history(const RunConfig& cfg, const Mesh1D& mesh) {
  return init_history(initial_data(cfg), mesh, cfg.dt);
}

// ---------------------------------------------------------------------------
// step system

namespace {

enum Field : std::size_t { kU = 0, kPhi = 1, kW = 2 };

constexpr std::size_t kBand = 2 * kFieldsPerNode - 1;

/// Adds coef * M into block (row_field, col_field) of the interleaved matrix.
void add_block(BandMatrix& A, const Tridiagonal& M, double coef, Field row_field, Field col_field) {
  const std::size_t m = M.size();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t lo = i > 0 ? i - 1 : 0;
    const std::size_t hi = i + 1 < m ? i + 1 : i;
    for (std::size_t j = lo; j <= hi; ++j) {
      const double v = M(i, j);
      if (v != 0.0) {
        A.add(kFieldsPerNode * i + row_field, kFieldsPerNode * j + col_field, coef * v);
      }
    }
  }
}

void check_state(const SolverState& state, std::size_t m) {
  for (const NodalVector* v : {&state.u_curr, &state.u_prev, &state.phi_curr, &state.phi_prev,
                               &state.w_curr, &state.w_prev}) {
    require_size(*v, m, "solver state");
  }
}

void check_forcing(const Forcing& f, std::size_t m) {
  for (const NodalVector* v : {&f.f_u, &f.f_phi, &f.f_w}) {
    if (!v->empty()) require_size(*v, m, "forcing");
  }
}

double norm2(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

SolverState rotate(const SolverState& state, std::span<const double> solution) {
  const std::size_t m = state.size();
  SolverState next;
  next.dt = state.dt;
  next.n = state.n + 1;
  next.u_prev2 = state.u_prev;
  next.u_prev = state.u_curr;
  next.phi_prev = state.phi_curr;
  next.w_prev = state.w_curr;
  next.u_curr.resize(m);
  next.phi_curr.resize(m);
  next.w_curr.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    next.u_curr[i] = solution[kFieldsPerNode * i + kU];
    next.phi_curr[i] = solution[kFieldsPerNode * i + kPhi];
    next.w_curr[i] = solution[kFieldsPerNode * i + kW];
  }
  return next;
}

/// Solves with a ready factorization and enforces the residual bound.
SolverState solve_step(const BandMatrix& matrix, const BandLU& lu, const SolverState& state,
                       std::vector<double> rhs, double* residual_out) {
  std::vector<double> sol = rhs;
  lu.solve_in_place(sol);

  std::vector<double> r(rhs.size());
  matrix.multiply(sol, r);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= rhs[i];
  const double rhs_norm = norm2(rhs);
  const double res_norm = norm2(r);
  double relative = 0.0;
  if (rhs_norm > 0.0) {
    relative = res_norm / rhs_norm;
  } else if (norm2(sol) != 0.0) {
    relative = std::numeric_limits<double>::infinity();
  }
  if (!(relative <= kMaxRelativeResidual)) {
    throw Error(ErrorCode::ResidualTooLarge,
                "relative residual " + std::to_string(relative) + " at level " +
                    std::to_string(state.n + 1));
  }
  if (residual_out) *residual_out = relative;
  return rotate(state, sol);
}

}  // namespace

BandMatrix assemble_step_matrix(const PhysicalParams& p, const FemMatrices& mats, double dt) {
  const std::size_t m = mats.size();
  BandMatrix A(kFieldsPerNode * m, kBand, kBand);
  const double inv_dt2 = 1.0 / (dt * dt);

  add_block(A, mats.Z, p.rho * inv_dt2, kU, kU);
  add_block(A, mats.T, p.mu, kU, kU);
  add_block(A, mats.Y, p.b, kU, kPhi);

  add_block(A, mats.Y, p.J * inv_dt2, kPhi, kU);
  add_block(A, mats.X, p.b, kPhi, kU);
  add_block(A, mats.T, p.delta, kPhi, kPhi);
  add_block(A, mats.Z, p.xi, kPhi, kPhi);
  add_block(A, mats.X, p.d, kPhi, kW);

  add_block(A, mats.X, p.d / dt, kW, kPhi);
  add_block(A, mats.Z, p.alpha / dt + p.k, kW, kW);
  add_block(A, mats.T, p.kappa, kW, kW);
  return A;
}

std::vector<double> assemble_step_rhs(const SolverState& state, const PhysicalParams& p,
                                      const FemMatrices& mats, const Forcing& forcing) {
  const std::size_t m = mats.size();
  check_state(state, m);
  check_forcing(forcing, m);
  const double dt = state.dt;

  NodalVector extrapolated(m);
  for (std::size_t i = 0; i < m; ++i) extrapolated[i] = 2.0 * state.u_curr[i] - state.u_prev[i];
  const NodalVector z_u = mats.Z * extrapolated;
  const NodalVector y_u = mats.Y * extrapolated;
  const NodalVector z_w = mats.Z * state.w_curr;
  const NodalVector x_phi = mats.X * state.phi_curr;

  std::vector<double> rhs(kFieldsPerNode * m);
  const double inv_dt2 = 1.0 / (dt * dt);
  for (std::size_t i = 0; i < m; ++i) {
    rhs[kFieldsPerNode * i + kU] = p.rho * inv_dt2 * z_u[i] + (forcing.f_u.empty() ? 0.0 : forcing.f_u[i]);
    rhs[kFieldsPerNode * i + kPhi] = p.J * inv_dt2 * y_u[i] + (forcing.f_phi.empty() ? 0.0 : forcing.f_phi[i]);
    rhs[kFieldsPerNode * i + kW] = p.alpha / dt * z_w[i] + p.d / dt * x_phi[i] +
                                   (forcing.f_w.empty() ? 0.0 : forcing.f_w[i]);
  }
  return rhs;
}

StepSystem assemble_step_system(const SolverState& state, const PhysicalParams& p,
                                const FemMatrices& mats, const Forcing& forcing) {
  return {assemble_step_matrix(p, mats, state.dt), assemble_step_rhs(state, p, mats, forcing)};
}

SolverState advance(const SolverState& state, const PhysicalParams& p, const FemMatrices& mats,
                    const Forcing& forcing) {
  StepSystem system = assemble_step_system(state, p, mats, forcing);
  const BandLU lu(system.matrix);
  return solve_step(system.matrix, lu, state, std::move(system.rhs), nullptr);
}

Stepper::Stepper(const PhysicalParams& p, const FemMatrices& mats, double dt)
    : params_(p), mats_(mats), dt_(dt), matrix_(assemble_step_matrix(p, mats, dt)), lu_(matrix_) {}

SolverState Stepper::advance(const SolverState& state, const Forcing& forcing) const {
  if (state.dt != dt_) {
    throw Error(ErrorCode::DimensionMismatch, "state time step differs from the factored operator");
  }
  return solve_step(matrix_, lu_, state, assemble_step_rhs(state, params_, mats_, forcing),
                    &last_residual_);
}

// ---------------------------------------------------------------------------
// trajectories

Frame make_frame(const SolverState& state) {
  return {state.n, state.n * state.dt, state.u_curr, state.phi_curr, state.w_curr,
          state.u_velocity(), state.phi_velocity()};
}

Trajectory run(const RunConfig& cfg, const RunOptions& options) {
  validate_run_config(cfg);
  const PhysicalParams& p = cfg.params;

  Trajectory traj;
  traj.mesh = build_mesh(p.l, cfg.s);
  traj.mats = assemble_matrices(traj.mesh);
  traj.params = p;
  traj.constants = lyapunov_constants(p);
  traj.dt = cfg.dt;

  const Stepper stepper(p, traj.mats, cfg.dt);
  SolverState state = options.initial ? init_history(*options.initial, traj.mesh, cfg.dt)
                                      : init_history(cfg, traj.mesh);

  const int last = cfg.final_level();
  traj.steps.reserve(static_cast<std::size_t>(last - 1));
  for (int n = 2; n <= last; ++n) {
    const Forcing forcing = options.forcing ? options.forcing(n * cfg.dt) : Forcing{};
    state = stepper.advance(state, forcing);
    ++traj.solves;
    traj.max_residual = std::max(traj.max_residual, stepper.last_residual());

    const NodalVector vel = state.u_velocity();
    const NodalVector acc = state.u_acceleration();
    const FieldView view = view_of(state, vel, acc);

    StepRecord rec;
    rec.n = state.n;
    rec.t = state.n * cfg.dt;
    rec.energy = discrete_energy(view, p, traj.mats);
    rec.w_l2_sq = l2_squared(traj.mats, state.w_curr);
    rec.w_h1_sq = h1_semi_squared(traj.mats, state.w_curr);
    rec.dissipation_rate = p.kappa * rec.w_h1_sq + p.k * rec.w_l2_sq;
    rec.lyapunov = lyapunov_values(view, rec.energy.total, p, traj.mats, traj.constants);
    traj.steps.push_back(rec);

    if ((n - 2) % cfg.output_every == 0) traj.frames.push_back(make_frame(state));
  }
  traj.final_state = std::move(state);
  return traj;
}

}  // namespace poromt
