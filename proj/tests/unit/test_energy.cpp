#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "energy.hpp"
#include "errors.hpp"
#include "timestepper.hpp"

using namespace poromt;

namespace {

RunConfig reference_config() {
  RunConfig cfg;
  cfg.params = reference_params();
  cfg.s = 11;
  cfg.dt = 1.0 / 22.0;
  cfg.t_final = 25.0;
  const ProfilePreset parabola = ProfilePreset::parse("parabola");
  cfg.init_u0 = cfg.init_u1 = cfg.init_phi0 = cfg.init_phi1 = cfg.init_w0 = parabola;
  return cfg;
}

// Composite Simpson on each element; exact for the quadratic integrand.
double coupled_by_simpson(const NodalVector& u, const NodalVector& phi, const PhysicalParams& p,
                          double h) {
  const std::size_t m = u.size();
  auto node = [&](const NodalVector& v, std::size_t j) { return j == 0 || j == m + 1 ? 0.0 : v[j - 1]; };
  double acc = 0.0;
  for (std::size_t e = 0; e <= m; ++e) {
    const double ux = (node(u, e + 1) - node(u, e)) / h;
    auto g = [&](double phi_val) { return p.b / std::sqrt(p.xi) * ux + std::sqrt(p.xi) * phi_val; };
    const double g0 = g(node(phi, e));
    const double g1 = g(node(phi, e + 1));
    const double gm = g(0.5 * (node(phi, e) + node(phi, e + 1)));
    acc += h / 6.0 * (g0 * g0 + 4.0 * gm * gm + g1 * g1);
  }
  return acc;
}

}  // namespace

TEST(CoupledNorm, MatchesSimpson) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01;
  const PhysicalParams p = reference_params();
  NodalVector u(9), phi(9);
  for (int trial = 0; trial < 20; ++trial) {
    for (double& x : u) x = n01(rng);
    for (double& x : phi) x = n01(rng);
    const double ref = coupled_by_simpson(u, phi, p, 0.1);
    EXPECT_NEAR(coupled_norm_squared(u, phi, p, 0.1), ref, 1e-12 * ref);
  }
}

TEST(Energy, ZeroStateHasZeroEnergy) {
  const FemMatrices mats = assemble_matrices(build_mesh(1.0, 6));
  const NodalVector z(5, 0.0);
  const EnergyBreakdown e = discrete_energy(FieldView{z, z, z, z, z}, reference_params(), mats);
  EXPECT_EQ(e.total, 0.0);
}

TEST(Energy, RandomStatesArePositive) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n01;
  const FemMatrices mats = assemble_matrices(build_mesh(1.0, 11));
  const PhysicalParams p = reference_params();
  NodalVector f[5];
  for (int trial = 0; trial < 200; ++trial) {
    for (auto& v : f) {
      v.resize(10);
      for (double& x : v) x = n01(rng);
    }
    const EnergyBreakdown e = discrete_energy(FieldView{f[0], f[1], f[2], f[3], f[4]}, p, mats);
    EXPECT_GT(e.total, 0.0);
    for (double part : {e.kinetic, e.accel, e.elastic, e.vel_grad, e.porous_grad, e.coupled, e.thermal}) {
      EXPECT_GE(part, 0.0);
    }
    EXPECT_NEAR(e.total,
                e.kinetic + e.accel + e.elastic + e.vel_grad + e.porous_grad + e.coupled + e.thermal,
                1e-14 * e.total);
  }
}

TEST(Energy, SingleFieldIsDetected) {
  const FemMatrices mats = assemble_matrices(build_mesh(1.0, 4));
  const PhysicalParams p = reference_params();
  const NodalVector z(3, 0.0), one = {0.0, 1e-3, 0.0};
  EXPECT_GT(discrete_energy(FieldView{z, z, one, z, z}, p, mats).thermal, 0.0);
  EXPECT_GT(discrete_energy(FieldView{z, one, z, z, z}, p, mats).total, 0.0);
  EXPECT_GT(discrete_energy(FieldView{z, z, z, z, one}, p, mats).accel, 0.0);
}

TEST(Energy, StateOverloadNeedsHistory) {
  const RunConfig cfg = reference_config();
  const Mesh1D mesh = build_mesh(1.0, cfg.s);
  const FemMatrices mats = assemble_matrices(mesh);
  const SolverState st = init_history(cfg, mesh);
  try {
    discrete_energy(st, cfg.params, mats);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientHistory);
  }
}

TEST(Energy, DecreasesAlongReferenceRun) {
  const Trajectory traj = run(reference_config());
  for (std::size_t i = 1; i < traj.steps.size(); ++i) {
    EXPECT_LT(traj.steps[i].energy.total, traj.steps[i - 1].energy.total) << "n=" << traj.steps[i].n;
  }
}

TEST(Dissipation, IdentityHoldsOnReferenceRun) {
  const Trajectory traj = run(reference_config());
  const DissipationReport r = dissipation_check(traj, traj.params);
  EXPECT_TRUE(r.ok()) << "first violation at n=" << r.first_violation;
  EXPECT_EQ(r.levels.size(), traj.steps.size() - 1);
  EXPECT_EQ(r.levels.front(), 3);
  EXPECT_LE(r.max_scaled, kDissipationTolerance);
}

TEST(Dissipation, FlagsFabricatedIncrease) {
  Trajectory traj = run(reference_config());
  traj.steps[10].energy.total *= 2.0;
  const DissipationReport r = dissipation_check(traj, traj.params);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.first_violation, traj.steps[10].n);
}

TEST(Lyapunov, SandwichOnReferenceRun) {
  const Trajectory traj = run(reference_config());
  const LyapunovConstants& c = traj.constants;
  for (const StepRecord& r : traj.steps) {
    EXPECT_GE(r.lyapunov.lower_margin, 0.0) << "n=" << r.n;
    EXPECT_GE(r.lyapunov.upper_margin, 0.0) << "n=" << r.n;
    EXPECT_LE(c.nu1 * r.energy.total, r.lyapunov.L * (1 + 1e-12));
    EXPECT_LE(r.lyapunov.L, c.nu2 * r.energy.total * (1 + 1e-12));
  }
}

TEST(Lyapunov, ValuesMatchDefinition) {
  const FemMatrices mats = assemble_matrices(build_mesh(1.0, 5));
  const PhysicalParams p = reference_params();
  const LyapunovConstants c = lyapunov_constants(p);
  const NodalVector u = {0.1, 0.2, 0.1, 0.0}, phi = {0.0, 0.3, -0.1, 0.2}, w = {1, 0, 0, 1},
                    vel = {1, -1, 0.5, 0}, acc = {0, 0, 0, 0};
  const FieldView f{u, phi, w, vel, acc};
  const double E = discrete_energy(f, p, mats).total;
  const LyapunovValues lv = lyapunov_values(f, E, p, mats, c);
  EXPECT_NEAR(lv.L, c.N1 * E + lv.F + c.N2 * lv.G, 1e-9 * std::abs(lv.L));
  EXPECT_NEAR(lv.lower_margin + lv.upper_margin, 2.0 * c.N0 * E, 1e-9 * c.N0 * E);
}

TEST(DecayFit, RecoversExactExponential) {
  std::vector<double> t, e;
  for (int i = 0; i < 100; ++i) {
    t.push_back(0.1 * i);
    e.push_back(2.0 * std::exp(-0.7 * 0.1 * i));
  }
  const DecayFit fit = fit_decay_rate(t, e, 0.5);
  EXPECT_NEAR(fit.omega_hat, 0.7, 1e-12);
  EXPECT_NEAR(fit.log_intercept, std::log(2.0), 1e-11);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
  EXPECT_EQ(fit.samples, 50u);
}

TEST(DecayFit, ConstantSeries) {
  const std::vector<double> t = {0, 1, 2, 3}, e = {1, 1, 1, 1};
  const DecayFit fit = fit_decay_rate(t, e, 1.0);
  EXPECT_EQ(fit.omega_hat, 0.0);
  EXPECT_EQ(fit.r_squared, 1.0);
}

TEST(DecayFit, Errors) {
  const std::vector<double> t = {0, 1, 2, 3, 4}, e = {1, 0.5, 0.25, 0.0, 0.1};
  try {
    fit_decay_rate(t, e, 1.0);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::NonPositiveEnergy);
  }
  try {
    fit_decay_rate(t, e, 0.4);  // two samples
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::WindowTooSmall);
  }
  EXPECT_THROW(fit_decay_rate(t, e, 0.0), Error);
  EXPECT_THROW(fit_decay_rate(t, e, 1.5), Error);
  EXPECT_THROW(fit_decay_rate(std::vector<double>{0, 1}, e, 1.0), Error);
}
