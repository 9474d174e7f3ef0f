#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace poromt {

/// Coefficients of a P1 field at the interior nodes x_1..x_{s-1}. Boundary
/// values are zero and never stored.
using NodalVector = std::vector<double>;

/// Pointwise profile x -> value used for initial data and exact fields.
using Profile = std::function<double(double)>;

/// Uniform partition of (0, l) into s elements.
struct Mesh1D {
  double l = 0;
  int s = 0;
  double h = 0;
  std::vector<double> nodes;  // s + 1 coordinates, nodes.front() == 0, nodes.back() == l

  int interior_count() const noexcept { return s - 1; }
  double interior_node(int i) const { return nodes[static_cast<std::size_t>(i) + 1]; }
};

/// Throws TooFewElements for s < 2 and InvalidArgument for l <= 0.
Mesh1D build_mesh(double l, int s);

/// Square tridiagonal matrix in three-band storage. Row index is the test
/// function, column index the trial function.
class Tridiagonal {
 public:
  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t n);

  std::size_t size() const noexcept { return diag_.size(); }

  /// Entry (row, col); zero outside the band.
  double operator()(std::size_t row, std::size_t col) const;

  double& lower(std::size_t row) { return lower_[row - 1]; }  // (row, row-1)
  double& diag(std::size_t row) { return diag_[row]; }
  double& upper(std::size_t row) { return upper_[row]; }  // (row, row+1)

  /// y = A x
  void multiply(std::span<const double> x, std::span<double> y) const;
  NodalVector operator*(std::span<const double> x) const;

  /// y^T A x
  double form(std::span<const double> y, std::span<const double> x) const;

  Tridiagonal transposed() const;

 private:
  std::vector<double> lower_, diag_, upper_;
};

/// Galerkin matrices on the interior hat functions psi_1..psi_{s-1}.
///   Z(a,b) = (psi_b, psi_a)       mass
///   T(a,b) = (psi_b', psi_a')     stiffness
///   X(a,b) = (psi_b', psi_a)      convection, skew-symmetric
///   Y = X^T                       = -X
struct FemMatrices {
  Tridiagonal Z, T, X, Y;
  double h = 0;
  std::size_t size() const noexcept { return Z.size(); }
};

FemMatrices assemble_matrices(const Mesh1D& mesh);

/// values[i-1] = profile(x_i) for i = 1..s-1. Throws NonFiniteSample with the
/// offending node index.
NodalVector interpolate_nodal(const Profile& profile, const Mesh1D& mesh);

struct DiscreteNorms {
  double l2 = 0;       // sqrt(v^T Z v)
  double h1_semi = 0;  // sqrt(v^T T v)
};

DiscreteNorms norms(const FemMatrices& mats, std::span<const double> v);

/// v^T Z v and v^T T v, clamped at zero.
double l2_squared(const FemMatrices& mats, std::span<const double> v);
double h1_semi_squared(const FemMatrices& mats, std::span<const double> v);

void require_size(std::span<const double> v, std::size_t n, const char* what);

}  // namespace poromt
