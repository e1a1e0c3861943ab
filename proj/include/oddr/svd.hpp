// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "oddr/kernels/kernels.hpp"

namespace oddr {

// Dense column-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[c * rows_ + r];
  }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[c * rows_ + r];
  }
  double* column(std::size_t c) { return data_.data() + c * rows_; }
  const double* column(std::size_t c) const { return data_.data() + c * rows_; }
  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double frobenius_norm(const Matrix& m);
double frobenius_distance(const Matrix& a, const Matrix& b);

// Thin SVD of an m x n matrix, r = min(m, n), kept in outer-product form:
// M = sum_j left_j right_j^T with terms sorted by descending singular value.
// One factor of each term carries sigma_j and the other is a unit singular
// vector, so reconstruction never divides by a (possibly zero) sigma.
struct SvdResult {
  std::vector<double> singular_values;
  Matrix left;   // m x r
  Matrix right;  // n x r
};

// One-sided (Hestenes) Jacobi SVD. Converges to working precision for any
// finite input; `kernels` selects the inner-loop implementation.
SvdResult jacobi_svd(const Matrix& m, const kernels::KernelTable& kernels);
SvdResult jacobi_svd(const Matrix& m);

// sum_{j < rank} left_j right_j^T
Matrix reconstruct(const SvdResult& svd, std::size_t rank);

}  // namespace oddr
