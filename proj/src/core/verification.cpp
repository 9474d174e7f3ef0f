#include "verification.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace poromt {

double TimeFactor::eval(double t, int order) const {
  switch (kind) {
    case Kind::Exp:
      return std::pow(-a, order) * std::exp(-a * t);
    case Kind::Cos: {
      const double arg = a * t + b;
      switch (order % 4) {
        case 0: return std::pow(a, order) * std::cos(arg);
        case 1: return -std::pow(a, order) * std::sin(arg);
        case 2: return -std::pow(a, order) * std::cos(arg);
        default: return std::pow(a, order) * std::sin(arg);
      }
    }
    case Kind::Quadratic:
      switch (order) {
        case 0: return a + b * t + c * t * t;
        case 1: return b + 2.0 * c * t;
        case 2: return 2.0 * c;
        default: return 0.0;
      }
  }
  return 0.0;
}

double SpaceFactor::eval(double x, double l, int order) const {
  if (kind == Kind::Bubble) {
    switch (order) {
      case 0: return x * (l - x) / (l * l);
      case 1: return (l - 2.0 * x) / (l * l);
      case 2: return -2.0 / (l * l);
      default: return 0.0;
    }
  }
  const double wave = mode * std::numbers::pi / l;
  switch (order % 4) {
    case 0: return std::pow(wave, order) * std::sin(wave * x);
    case 1: return std::pow(wave, order) * std::cos(wave * x);
    case 2: return -std::pow(wave, order) * std::sin(wave * x);
    default: return -std::pow(wave, order) * std::cos(wave * x);
  }
}

ManufacturedSolution ManufacturedSolution::exp_sine(double l) {
  const SeparableField f{1.0, TimeFactor::exp_decay(1.0), {SpaceFactor::Kind::Sine, 1}};
  return {"exp_sine", l, f, f, f};
}

ManufacturedSolution ManufacturedSolution::mixed(double l) {
  return {"mixed", l,
          {1.0, TimeFactor::cosine(2.0), {SpaceFactor::Kind::Sine, 1}},
          {1.0, TimeFactor::exp_decay(0.5), {SpaceFactor::Kind::Sine, 2}},
          {1.0, TimeFactor::quadratic(1.0, 1.0, 0.5), {SpaceFactor::Kind::Sine, 1}}};
}

ManufacturedSolution ManufacturedSolution::bubble(double l) {
  return {"bubble", l,
          {1.0, TimeFactor::exp_decay(0.5), {SpaceFactor::Kind::Bubble, 1}},
          {2.0, TimeFactor::cosine(1.0, 0.3), {SpaceFactor::Kind::Bubble, 1}},
          {0.5, TimeFactor::exp_decay(1.0), {SpaceFactor::Kind::Sine, 2}}};
}

ManufacturedSolution ManufacturedSolution::zero(double l) {
  const SeparableField f{0.0, TimeFactor::exp_decay(0.0), {SpaceFactor::Kind::Sine, 1}};
  return {"zero", l, f, f, f};
}

ManufacturedSolution ManufacturedSolution::by_name(const std::string& name, double l) {
  if (name == "exp_sine") return exp_sine(l);
  if (name == "mixed") return mixed(l);
  if (name == "bubble") return bubble(l);
  if (name == "zero") return zero(l);
  throw Error(ErrorCode::InvalidArgument,
              "unknown manufactured family '" + name + "' (expected exp_sine, mixed, bubble or zero)");
}

ForcingValues forcing_at(const ManufacturedSolution& ms, const PhysicalParams& p, double x, double t) {
  ForcingValues f;
  f.f1 = p.rho * ms.U(x, t, 2, 0) - p.mu * ms.U(x, t, 0, 2) - p.b * ms.Phi(x, t, 0, 1);
  f.f2 = -p.J * ms.U(x, t, 2, 1) - p.delta * ms.Phi(x, t, 0, 2) + p.b * ms.U(x, t, 0, 1) +
         p.xi * ms.Phi(x, t) + p.d * ms.W(x, t, 0, 1);
  f.f3 = p.alpha * ms.W(x, t, 1, 0) - p.kappa * ms.W(x, t, 0, 2) + p.d * ms.Phi(x, t, 1, 1) +
         p.k * ms.W(x, t);
  return f;
}

ForcingProvider manufactured_forcing(const ManufacturedSolution& ms, const PhysicalParams& p,
                                     const Mesh1D& mesh, const FemMatrices& mats) {
  return [ms, p, mesh, mats](double t) {
    const auto m = static_cast<std::size_t>(mesh.interior_count());
    NodalVector g1(m), g2(m), g3(m);
    for (std::size_t i = 0; i < m; ++i) {
      const ForcingValues f = forcing_at(ms, p, mesh.interior_node(static_cast<int>(i)), t);
      g1[i] = f.f1;
      g2[i] = f.f2;
      g3[i] = f.f3;
    }
    return Forcing{mats.Z * g1, mats.Z * g2, mats.Z * g3};
  };
}

InitialData manufactured_initial_data(const ManufacturedSolution& ms, double dt) {
  InitialData data;
  data.u0 = [ms](double x) { return ms.U(x, 0.0); };
  data.u1 = [ms, dt](double x) { return ms.U(x, dt); };
  data.phi0 = [ms](double x) { return ms.Phi(x, 0.0); };
  data.phi1 = [ms, dt](double x) { return ms.Phi(x, dt); };
  data.w0 = [ms](double x) { return ms.W(x, 0.0); };
  data.w1 = [ms, dt](double x) { return ms.W(x, dt); };
  return data;
}

namespace {

struct LevelFields {
  const NodalVector& u;
  const NodalVector& phi;
  const NodalVector& w;
  NodalVector u_vel, phi_vel;
};

ErrorNorms measure(const Trajectory& traj, const ManufacturedSolution& ms, double t,
                   const LevelFields& f) {
  const Mesh1D& mesh = traj.mesh;
  const FemMatrices& mats = traj.mats;
  auto diff = [&](const NodalVector& discrete, auto exact) {
    NodalVector e = interpolate_nodal(exact, mesh);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = discrete[i] - e[i];
    return e;
  };
  const NodalVector d_uvel = diff(f.u_vel, [&](double x) { return ms.U(x, t, 1, 0); });
  const NodalVector d_phivel = diff(f.phi_vel, [&](double x) { return ms.Phi(x, t, 1, 0); });
  const NodalVector d_u = diff(f.u, [&](double x) { return ms.U(x, t); });
  const NodalVector d_phi = diff(f.phi, [&](double x) { return ms.Phi(x, t); });
  const NodalVector d_w = diff(f.w, [&](double x) { return ms.W(x, t); });

  ErrorNorms e;
  e.e_uvel = norms(mats, d_uvel).l2;
  e.e_phivel = norms(mats, d_phivel).l2;
  e.e_ux = norms(mats, d_u).h1_semi;
  const DiscreteNorms phi_norms = norms(mats, d_phi);
  e.e_phix = phi_norms.h1_semi;
  e.e_phi = phi_norms.l2;
  e.e_w = norms(mats, d_w).l2;
  return e;
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

ErrorNorms error_norms(const Trajectory& traj, const ManufacturedSolution& ms, double t_n) {
  for (const Frame& frame : traj.frames) {
    if (same_time(frame.t, t_n)) {
      return measure(traj, ms, frame.t, {frame.u, frame.phi, frame.w, frame.u_vel, frame.phi_vel});
    }
  }
  const SolverState& s = traj.final_state;
  if (s.n >= 2 && same_time(s.n * s.dt, t_n)) {
    return measure(traj, ms, s.n * s.dt,
                   {s.u_curr, s.phi_curr, s.w_curr, s.u_velocity(), s.phi_velocity()});
  }
  throw Error(ErrorCode::StepNotRecorded, "no recorded level at t = " + std::to_string(t_n));
}

double fitted_order(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

ConvergenceReport convergence_study(const RunConfig& base, const ManufacturedSolution& ms,
                                    int levels, unsigned workers) {
  if (levels < 3) {
    throw Error(ErrorCode::InvalidArgument, "a convergence study needs at least 3 levels");
  }
  validate_run_config(base);
  build_mesh(base.params.l, base.s);

  const int finest = 1 << (levels - 1);
  const double frozen_dt = base.dt / finest / 8.0;
  const int frozen_s = base.s * finest * 8;

  struct Job {
    bool space;
    int index;
    int s;
    double dt;
  };
  std::vector<Job> jobs;
  for (int j = 0; j < levels; ++j) jobs.push_back({true, j, base.s << j, frozen_dt});
  for (int j = 0; j < levels; ++j) jobs.push_back({false, j, frozen_s, base.dt / (1 << j)});

  ConvergenceReport report;
  report.space.levels.resize(static_cast<std::size_t>(levels));
  report.time.levels.resize(static_cast<std::size_t>(levels));

  parallel_for(jobs.size(), workers, [&](std::size_t i) {
    const Job& job = jobs[i];
    RunConfig cfg = base;
    cfg.s = job.s;
    cfg.dt = job.dt;
    cfg.output_every = std::numeric_limits<int>::max();

    const Mesh1D mesh = build_mesh(cfg.params.l, cfg.s);
    const FemMatrices mats = assemble_matrices(mesh);
    RunOptions options;
    options.initial = manufactured_initial_data(ms, cfg.dt);
    options.forcing = manufactured_forcing(ms, cfg.params, mesh, mats);
    const Trajectory traj = run(cfg, options);

    ConvergenceLevel level;
    level.s = cfg.s;
    level.h = mesh.h;
    level.dt = cfg.dt;
    level.errors = error_norms(traj, ms, traj.final_state.n * cfg.dt);
    auto& sweep = job.space ? report.space : report.time;
    sweep.levels[static_cast<std::size_t>(job.index)] = level;
  });

  for (ConvergenceSweep* sweep : {&report.space, &report.time}) {
    const bool space = sweep == &report.space;
    std::vector<double> x;
    for (const auto& level : sweep->levels) x.push_back(space ? level.h : level.dt);
    for (std::size_t c = 0; c < kErrorNames.size(); ++c) {
      std::vector<double> y;
      for (const auto& level : sweep->levels) y.push_back(level.errors.as_array()[c]);
      sweep->orders[c] = fitted_order(x, y);
    }
  }
  return report;
}

}  // namespace poromt
