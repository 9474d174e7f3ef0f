#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "banded.hpp"
#include "errors.hpp"

using namespace poromt;

namespace {

BandMatrix random_band(std::size_t n, std::size_t kl, std::size_t ku, std::mt19937_64& rng,
                       Eigen::MatrixXd& dense) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BandMatrix A(n, kl, ku);
  dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!A.in_band(i, j)) continue;
      const double v = u(rng);
      A.add(i, j, v);
      dense(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return A;
}

}  // namespace

TEST(BandMatrix, StoresOnlyBand) {
  BandMatrix A(6, 1, 2);
  EXPECT_TRUE(A.in_band(3, 2));
  EXPECT_TRUE(A.in_band(3, 5));
  EXPECT_FALSE(A.in_band(3, 1));
  EXPECT_FALSE(A.in_band(0, 3));
  EXPECT_EQ(A(0, 5), 0.0);
  EXPECT_THROW(A.add(0, 4, 1.0), Error);
}

TEST(BandMatrix, AddAccumulates) {
  BandMatrix A(3, 1, 1);
  A.add(1, 2, 1.5);
  A.add(1, 2, 0.25);
  EXPECT_EQ(A(1, 2), 1.75);
  EXPECT_EQ(A.max_abs(), 1.75);
}

TEST(BandMatrix, MultiplyMatchesDense) {
  std::mt19937_64 rng(11);
  Eigen::MatrixXd dense;
  const BandMatrix A = random_band(17, 5, 5, rng, dense);
  std::vector<double> x(17), y(17);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(static_cast<double>(i));
  A.multiply(x, y);
  const Eigen::VectorXd ref = dense * Eigen::Map<Eigen::VectorXd>(x.data(), 17);
  for (int i = 0; i < 17; ++i) EXPECT_NEAR(y[static_cast<std::size_t>(i)], ref(i), 1e-13);
}

TEST(BandLU, SolvesRandomSystemsLikeDenseLU) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1u, 2u, 6u, 15u, 40u}) {
    for (auto [kl, ku] : {std::pair<std::size_t, std::size_t>{5, 5}, {1, 3}, {2, 0}}) {
      Eigen::MatrixXd dense;
      const BandMatrix A = random_band(n, kl, ku, rng, dense);
      Eigen::VectorXd b = Eigen::VectorXd::Random(static_cast<Eigen::Index>(n));
      const Eigen::VectorXd ref = dense.fullPivLu().solve(b);
      std::vector<double> x(b.data(), b.data() + n);
      BandLU(A).solve_in_place(x);
      const double scale = ref.cwiseAbs().maxCoeff();
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(x[i], ref(static_cast<Eigen::Index>(i)), 1e-9 * std::max(1.0, scale))
            << "n=" << n << " kl=" << kl << " ku=" << ku;
      }
    }
  }
}

TEST(BandLU, NeedsPivoting) {
  // zero leading entry: fails without row exchanges
  BandMatrix A(3, 1, 1);
  A.add(0, 1, 1.0);
  A.add(1, 0, 1.0);
  A.add(1, 1, 1.0);
  A.add(1, 2, 1.0);
  A.add(2, 1, 1.0);
  A.add(2, 2, 3.0);
  std::vector<double> x = {2.0, 6.0, 11.0};  // solution (1, 2, 3)
  BandLU(A).solve_in_place(x);
  EXPECT_NEAR(x[0], 1.0, 1e-14);
  EXPECT_NEAR(x[1], 2.0, 1e-14);
  EXPECT_NEAR(x[2], 3.0, 1e-14);
}

TEST(BandLU, SingularMatrixThrows) {
  BandMatrix A(3, 1, 1);
  A.add(0, 0, 1.0);
  A.add(1, 1, 1.0);
  try {
    BandLU lu(A);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularSystem);
  }
}

TEST(BandLU, WrongRhsSizeThrows) {
  BandMatrix A(2, 1, 1);
  A.add(0, 0, 1.0);
  A.add(1, 1, 1.0);
  const BandLU lu(A);
  std::vector<double> x(3, 1.0);
  EXPECT_THROW(lu.solve_in_place(x), Error);
}
