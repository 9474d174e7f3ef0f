#include "banded.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "fem.hpp"

namespace poromt {

BandMatrix::BandMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), width_(2 * kl + ku + 1), data_(n * (2 * kl + ku + 1), 0.0) {}

bool BandMatrix::in_band(std::size_t row, std::size_t col) const noexcept {
  return row < n_ && col < n_ && col + kl_ >= row && col <= row + ku_;
}

double BandMatrix::operator()(std::size_t row, std::size_t col) const noexcept {
  return in_band(row, col) ? at(row, col) : 0.0;
}

void BandMatrix::add(std::size_t row, std::size_t col, double value) {
  if (!in_band(row, col)) {
    throw Error(ErrorCode::InvalidArgument, "band matrix entry (" + std::to_string(row) + ", " +
                                                std::to_string(col) + ") outside the band");
  }
  at(row, col) += value;
}

void BandMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  require_size(x, n_, "band operand");
  require_size(y, n_, "band result");
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t lo = i > kl_ ? i - kl_ : 0;
    const std::size_t hi = std::min(n_ - 1, i + ku_ + kl_);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += at(i, j) * x[j];
    y[i] = acc;
  }
}

double BandMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

BandLU::BandLU(BandMatrix matrix) : lu_(std::move(matrix)), pivots_(lu_.n_) {
  const std::size_t n = lu_.n_;
  const std::size_t kl = lu_.kl_;
  const std::size_t reach = lu_.ku_ + lu_.kl_;
  const double scale = std::max(lu_.max_abs(), 1e-300);

  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last_row = std::min(n - 1, k + kl);
    const std::size_t last_col = std::min(n - 1, k + reach);

    std::size_t p = k;
    double best = std::abs(lu_.at(k, k));
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double v = std::abs(lu_.at(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > scale * 1e-300) || !std::isfinite(best)) {
      throw Error(ErrorCode::SingularSystem,
                  "zero pivot in banded factorization at column " + std::to_string(k));
    }
    pivots_[k] = p;
    if (p != k) {
      for (std::size_t j = k; j <= last_col; ++j) std::swap(lu_.at(k, j), lu_.at(p, j));
    }

    const double pivot = lu_.at(k, k);
    for (std::size_t i = k + 1; i <= last_row; ++i) {
      const double factor = lu_.at(i, k) / pivot;
      lu_.at(i, k) = factor;
      if (factor == 0.0) continue;
      for (std::size_t j = k + 1; j <= last_col; ++j) lu_.at(i, j) -= factor * lu_.at(k, j);
    }
  }
}

void BandLU::solve_in_place(std::span<double> rhs) const {
  const std::size_t n = lu_.n_;
  require_size(rhs, n, "right-hand side");
  const std::size_t kl = lu_.kl_;
  const std::size_t reach = lu_.ku_ + lu_.kl_;

  // forward: apply the recorded row swaps and Gauss transforms in order
  for (std::size_t k = 0; k < n; ++k) {
    if (pivots_[k] != k) std::swap(rhs[k], rhs[pivots_[k]]);
    const std::size_t last_row = std::min(n - 1, k + kl);
    for (std::size_t i = k + 1; i <= last_row; ++i) rhs[i] -= lu_.at(i, k) * rhs[k];
  }
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t last_col = std::min(n - 1, i + reach);
    double acc = rhs[i];
    for (std::size_t j = i + 1; j <= last_col; ++j) acc -= lu_.at(i, j) * rhs[j];
    rhs[i] = acc / lu_.at(i, i);
  }
}

}  // namespace poromt
