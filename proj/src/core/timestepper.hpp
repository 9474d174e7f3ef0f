#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "banded.hpp"
#include "energy.hpp"
#include "fem.hpp"
#include "model.hpp"
#include "state.hpp"

namespace poromt {

/// Nodal load vectors (f, psi_a) for the three rows of the step system.
/// An empty vector stands for zero load.
struct Forcing {
  NodalVector f_u, f_phi, f_w;
};

/// Load at time t. Called once per step with t = t_n of the level being solved.
using ForcingProvider = std::function<Forcing(double t)>;

/// Named initial profiles accepted by the config format.
struct ProfilePreset {
  enum class Kind { Zero, Parabola, Sine };
  Kind kind = Kind::Zero;
  int mode = 1;  // Sine only

  static ProfilePreset parse(const std::string& text);  // throws Parse
  std::string to_string() const;
  /// parabola: x(l-x)/l^2, sine: sin(mode*pi*x/l), zero: 0
  Profile make(double l) const;

  bool operator==(const ProfilePreset&) const = default;
};

struct RunConfig {
  PhysicalParams params;
  int s = 0;
  double dt = 0;
  double t_final = 0;
  ProfilePreset init_u0, init_u1, init_phi0, init_phi1, init_w0;
  int output_every = 1;

  /// Index of the last time level, round(t_final / dt).
  int final_level() const;

  bool operator==(const RunConfig&) const = default;
};

/// Checks dt > 0, t_final >= 2 dt, output_every >= 1 and the params.
void validate_run_config(const RunConfig& cfg);

/// The two-level start: displacement and porosity at t0 and t1, and the
/// microtemperature at t0 and t1.
struct InitialData {
  Profile u0, u1, phi0, phi1, w0, w1;
};

/// Profiles of a RunConfig, with w1 taken equal to w0.
InitialData initial_data(const RunConfig& cfg);

/// State at level n = 1: curr holds level 1, prev level 0. The first solved
/// level is n = 2.
SolverState init_history(const InitialData& data, const Mesh1D& mesh, double dt);
SolverState init_history(const RunConfig& cfg, const Mesh1D& mesh);

/// Unknowns are interleaved per node: [a_1, b_1, c_1, a_2, b_2, c_2, ...]
/// for displacement, volume fraction and microtemperature.
inline constexpr std::size_t kFieldsPerNode = 3;

/// Coupled implicit-Euler operator for one step. Depends only on the
/// params, the mesh matrices and dt.
BandMatrix assemble_step_matrix(const PhysicalParams& p, const FemMatrices& mats, double dt);

/// Right-hand side for advancing `state` (levels n, n-1) to level n + 1.
std::vector<double> assemble_step_rhs(const SolverState& state, const PhysicalParams& p,
                                      const FemMatrices& mats, const Forcing& forcing);

struct StepSystem {
  BandMatrix matrix;
  std::vector<double> rhs;
};

StepSystem assemble_step_system(const SolverState& state, const PhysicalParams& p,
                                const FemMatrices& mats, const Forcing& forcing);

inline constexpr double kMaxRelativeResidual = 1e-10;

/// Advances by one level with a freshly factored system.
SolverState advance(const SolverState& state, const PhysicalParams& p, const FemMatrices& mats,
                    const Forcing& forcing);

/// Holds the factored step operator for repeated steps with fixed
/// (params, mesh, dt).
class Stepper {
 public:
  Stepper(const PhysicalParams& p, const FemMatrices& mats, double dt);

  /// Throws DimensionMismatch if the state was built with another dt or size.
  SolverState advance(const SolverState& state, const Forcing& forcing) const;

  /// Relative residual of the most recent advance().
  double last_residual() const noexcept { return last_residual_; }

 private:
  PhysicalParams params_;
  FemMatrices mats_;
  double dt_;
  BandMatrix matrix_;
  BandLU lu_;
  mutable double last_residual_ = 0.0;
};

/// Per-level scalars, recorded for every solved level.
struct StepRecord {
  int n = 0;
  double t = 0;
  EnergyBreakdown energy;
  double w_l2_sq = 0;  // ||w^n||^2
  double w_h1_sq = 0;  // ||w_x^n||^2
  double dissipation_rate = 0;  // kappa ||w_x||^2 + k ||w||^2
  LyapunovValues lyapunov;
};

/// Nodal fields at a recorded level.
struct Frame {
  int n = 0;
  double t = 0;
  NodalVector u, phi, w, u_vel, phi_vel;
};

struct Trajectory {
  Mesh1D mesh;
  FemMatrices mats;
  PhysicalParams params;
  LyapunovConstants constants;
  double dt = 0;
  std::vector<StepRecord> steps;  // one per solved level, n = 2, 3, ...
  std::vector<Frame> frames;      // every output_every-th solved level
  SolverState final_state;
  int solves = 0;
  double max_residual = 0;
};

struct RunOptions {
  std::optional<InitialData> initial;  // overrides the config presets
  ForcingProvider forcing;             // empty: homogeneous system
};

/// Executes round(t_final/dt) - 1 coupled solves starting at n = 2.
Trajectory run(const RunConfig& cfg, const RunOptions& options = {});

Frame make_frame(const SolverState& state);

}  // namespace poromt
