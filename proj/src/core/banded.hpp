#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace poromt {

/// General band matrix with `kl` sub- and `ku` super-diagonals. Storage
/// reserves `kl` extra super-diagonals so the same object can hold the
/// partial-pivoting LU factors in place.
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower_bandwidth() const noexcept { return kl_; }
  std::size_t upper_bandwidth() const noexcept { return ku_; }

  bool in_band(std::size_t row, std::size_t col) const noexcept;

  /// Zero outside the band.
  double operator()(std::size_t row, std::size_t col) const noexcept;

  /// Precondition: in_band(row, col).
  void add(std::size_t row, std::size_t col, double value);

  void multiply(std::span<const double> x, std::span<double> y) const;

  double max_abs() const noexcept;

 private:
  friend class BandLU;
  double& at(std::size_t row, std::size_t col) noexcept {
    return data_[row * width_ + (col + kl_ - row)];
  }
  double at(std::size_t row, std::size_t col) const noexcept {
    return data_[row * width_ + (col + kl_ - row)];
  }

  std::size_t n_ = 0, kl_ = 0, ku_ = 0, width_ = 0;
  std::vector<double> data_;
};

/// Gaussian elimination with partial pivoting restricted to the band
/// (the dgbtrf/dgbtrs scheme). Throws SingularSystem on a zero pivot.
class BandLU {
 public:
  BandLU() = default;
  explicit BandLU(BandMatrix matrix);

  std::size_t size() const noexcept { return lu_.n_; }

  /// Overwrites rhs with the solution.
  void solve_in_place(std::span<double> rhs) const;

 private:
  BandMatrix lu_;
  std::vector<std::size_t> pivots_;
};

}  // namespace poromt
