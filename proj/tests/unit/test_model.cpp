#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "errors.hpp"
#include "model.hpp"
#include "oracles.hpp"

using namespace poromt;

TEST(ReferenceParams, MatchesExperimentValues) {
  const PhysicalParams p = reference_params();
  for (double v : {p.rho, p.d, p.alpha, p.b, p.xi, p.J}) EXPECT_EQ(v, 0.001);
  EXPECT_EQ(p.k, 1.0);
  EXPECT_EQ(p.mu, 0.01);
  EXPECT_EQ(p.delta, 0.001);
  EXPECT_EQ(p.kappa, 0.001);
  EXPECT_EQ(p.l, 1.0);
  EXPECT_NEAR(p.ellipticity(), 9e-6, 1e-18);
}

TEST(ValidateParams, AcceptsReference) { EXPECT_NO_THROW(validate_params(reference_params())); }

TEST(ValidateParams, ReportsEllipticityFailure) {
  PhysicalParams p = reference_params();
  p.b = 0.004;  // mu*xi = 1e-5 < b^2 = 1.6e-5
  try {
    validate_params(p);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::EllipticityViolated);
    ASSERT_EQ(e.violations().size(), 1u);
    EXPECT_EQ(e.violations()[0].name, "mu*xi-b^2");
  }
}

TEST(ValidateParams, EllipticityBoundaryIsRejected) {
  PhysicalParams p = reference_params();
  p.mu = 1.0;
  p.xi = 1.0;
  p.b = 1.0;
  EXPECT_THROW(validate_params(p), ValidationError);
}

TEST(ValidateParams, CollectsEveryViolation) {
  PhysicalParams p = reference_params();
  p.rho = 0.0;
  p.kappa = -1.0;
  p.l = std::numeric_limits<double>::quiet_NaN();
  try {
    validate_params(p);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveParameter);
    ASSERT_GE(e.violations().size(), 3u);
    EXPECT_EQ(e.violations()[0].name, "rho");
    EXPECT_EQ(e.violations()[1].name, "kappa");
    EXPECT_EQ(e.violations()[2].name, "l");
  }
}

TEST(ValidateParams, InfinityIsRejected) {
  PhysicalParams p = reference_params();
  p.k = std::numeric_limits<double>::infinity();
  EXPECT_THROW(validate_params(p), ValidationError);
}

TEST(LyapunovConstants, MatchHighPrecisionOracle) {
  const LyapunovConstants c = lyapunov_constants(reference_params());
  namespace ref = oracle::ref;
  const double tol = 1e-12;
  EXPECT_LT(oracle::rel_diff(c.C1, ref::C1), tol);
  EXPECT_LT(oracle::rel_diff(c.cp, ref::cp), tol);
  EXPECT_LT(oracle::rel_diff(c.N2, ref::N2), tol);
  EXPECT_LT(oracle::rel_diff(c.C2, ref::C2), tol);
  EXPECT_LT(oracle::rel_diff(c.C3, ref::C3), tol);
  EXPECT_LT(oracle::rel_diff(c.N0, ref::N0), tol);
  EXPECT_LT(oracle::rel_diff(c.N1, ref::N1), tol);
  EXPECT_LT(oracle::rel_diff(c.nu1, ref::nu1), tol);
  EXPECT_LT(oracle::rel_diff(c.nu2, ref::nu2), tol);
  EXPECT_LT(oracle::rel_diff(c.beta, ref::beta), tol);
  EXPECT_LT(oracle::rel_diff(c.omega, ref::omega), 1e-10);
  EXPECT_LT(oracle::rel_diff(c.M, ref::M), tol);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_LT(oracle::rel_diff(c.zeta[i], ref::zeta[i]), 1e-10) << "zeta" << i + 1;
  }
}

TEST(LyapunovConstants, PoincareScalesWithLengthSquared) {
  PhysicalParams p = reference_params();
  p.l = 3.0;
  EXPECT_NEAR(lyapunov_constants(p).cp, 9.0 / (M_PI * M_PI), 1e-15);
}

TEST(LyapunovConstants, StructuralRelationsHoldForRandomParams) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logu(-3.0, 1.0);
  int checked = 0;
  while (checked < 200) {
    PhysicalParams p;
    for (double* v : {&p.rho, &p.mu, &p.b, &p.J, &p.delta, &p.xi, &p.d, &p.alpha, &p.kappa, &p.k, &p.l}) {
      *v = std::pow(10.0, logu(rng));
    }
    if (p.ellipticity() <= 0.0) continue;
    ++checked;
    const LyapunovConstants c = lyapunov_constants(p);
    EXPECT_GT(c.N1, c.N0);
    EXPECT_GT(c.nu1, 0.0);
    EXPECT_DOUBLE_EQ(c.nu1, c.N1 - c.N0);
    EXPECT_DOUBLE_EQ(c.nu2, c.N1 + c.N0);
    EXPECT_GE(c.M, 1.0);
    EXPECT_GT(c.omega, 0.0);
    EXPECT_LE(c.beta, 2.0);
    for (double z : c.zeta) EXPECT_GT(z, 0.0);
  }
}

TEST(LyapunovConstants, FormatListsEveryConstant) {
  const std::string text = format_constants(lyapunov_constants(reference_params()));
  for (const char* key : {"cp", "C1", "C2", "C3", "N0", "N1", "N2", "nu1", "nu2", "zeta5", "beta", "omega", "M"}) {
    EXPECT_NE(text.find(std::string(key) + " = "), std::string::npos) << key;
  }
}

TEST(ErrorCodes, NamesAreDistinct) {
  std::set<std::string> names;
  for (int i = 0; i <= static_cast<int>(ErrorCode::StepNotRecorded); ++i) {
    names.insert(std::string(to_string(static_cast<ErrorCode>(i))));
  }
  EXPECT_EQ(names.size(), static_cast<std::size_t>(ErrorCode::StepNotRecorded) + 1);
}
