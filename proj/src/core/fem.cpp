#include "fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace poromt {

Mesh1D build_mesh(double l, int s) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    throw Error(ErrorCode::InvalidArgument, "domain length must be positive, got " + std::to_string(l));
  }
  if (s < 2) {
    throw Error(ErrorCode::TooFewElements,
                "need at least 2 elements for an interior node, got s=" + std::to_string(s));
  }
  Mesh1D mesh;
  mesh.l = l;
  mesh.s = s;
  mesh.h = l / s;
  mesh.nodes.resize(static_cast<std::size_t>(s) + 1);
  for (int j = 0; j <= s; ++j) {
    mesh.nodes[static_cast<std::size_t>(j)] = l * static_cast<double>(j) / s;
  }
  mesh.nodes.back() = l;
  return mesh;
}

Tridiagonal::Tridiagonal(std::size_t n)
    : lower_(n > 0 ? n - 1 : 0, 0.0), diag_(n, 0.0), upper_(n > 0 ? n - 1 : 0, 0.0) {}

double Tridiagonal::operator()(std::size_t row, std::size_t col) const {
  if (row == col) return diag_[row];
  if (col + 1 == row) return lower_[col];
  if (row + 1 == col) return upper_[row];
  return 0.0;
}

void Tridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  require_size(x, n, "tridiagonal operand");
  require_size(y, n, "tridiagonal result");
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diag_[i] * x[i];
    if (i > 0) acc += lower_[i - 1] * x[i - 1];
    if (i + 1 < n) acc += upper_[i] * x[i + 1];
    y[i] = acc;
  }
}

NodalVector Tridiagonal::operator*(std::span<const double> x) const {
  NodalVector y(size());
  multiply(x, y);
  return y;
}

double Tridiagonal::form(std::span<const double> y, std::span<const double> x) const {
  const std::size_t n = size();
  require_size(x, n, "bilinear form operand");
  require_size(y, n, "bilinear form operand");
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = diag_[i] * x[i];
    if (i > 0) row += lower_[i - 1] * x[i - 1];
    if (i + 1 < n) row += upper_[i] * x[i + 1];
    acc += y[i] * row;
  }
  return acc;
}

Tridiagonal Tridiagonal::transposed() const {
  Tridiagonal t(size());
  t.lower_ = upper_;
  t.diag_ = diag_;
  t.upper_ = lower_;
  return t;
}

FemMatrices assemble_matrices(const Mesh1D& mesh) {
  const auto m = static_cast<std::size_t>(mesh.interior_count());
  const double h = mesh.h;
  FemMatrices mats{Tridiagonal(m), Tridiagonal(m), Tridiagonal(m), Tridiagonal(m), h};
  for (std::size_t i = 0; i < m; ++i) {
    mats.Z.diag(i) = 2.0 * h / 3.0;
    mats.T.diag(i) = 2.0 / h;
    mats.X.diag(i) = 0.0;
    if (i + 1 < m) {
      mats.Z.upper(i) = h / 6.0;
      mats.Z.lower(i + 1) = h / 6.0;
      mats.T.upper(i) = -1.0 / h;
      mats.T.lower(i + 1) = -1.0 / h;
      // (psi_{i+1}', psi_i) = +1/2 on a uniform mesh
      mats.X.upper(i) = 0.5;
      mats.X.lower(i + 1) = -0.5;
    }
  }
  mats.Y = mats.X.transposed();
  return mats;
}

NodalVector interpolate_nodal(const Profile& profile, const Mesh1D& mesh) {
  NodalVector v(static_cast<std::size_t>(mesh.interior_count()));
  for (int i = 0; i < mesh.interior_count(); ++i) {
    const double value = profile(mesh.interior_node(i));
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::NonFiniteSample,
                  "profile is not finite at interior node " + std::to_string(i + 1));
    }
    v[static_cast<std::size_t>(i)] = value;
  }
  return v;
}

double l2_squared(const FemMatrices& mats, std::span<const double> v) {
  return std::max(0.0, mats.Z.form(v, v));
}

double h1_semi_squared(const FemMatrices& mats, std::span<const double> v) {
  return std::max(0.0, mats.T.form(v, v));
}

DiscreteNorms norms(const FemMatrices& mats, std::span<const double> v) {
  require_size(v, mats.size(), "nodal vector");
  return {std::sqrt(l2_squared(mats, v)), std::sqrt(h1_semi_squared(mats, v))};
}

void require_size(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": expected length " +
                                                  std::to_string(n) + ", got " +
                                                  std::to_string(v.size()));
  }
}

}  // namespace poromt
