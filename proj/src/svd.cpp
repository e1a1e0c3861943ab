// SPDX-License-Identifier: Apache-2.0
#include "oddr/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "oddr/error.hpp"

namespace oddr {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double frobenius_norm(const Matrix& m) {
  double sum = 0.0;
  for (double v : m.data()) sum += v * v;
  return std::sqrt(sum);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix shapes differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) t(c, r) = m(r, c);
  }
  return t;
}

constexpr int kMaxSweeps = 80;

// Orthogonalizes the columns of a tall matrix in place; `v` accumulates the
// rotations.
void hestenes_sweeps(Matrix& a, Matrix& v, const kernels::KernelTable& k) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const double tol =
      std::numeric_limits<double>::epsilon() * static_cast<double>(m);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double* ap = a.column(p);
        double* aq = a.column(q);
        const double alpha = k.dot(ap, ap, m);
        const double beta = k.dot(aq, aq, m);
        const double gamma = k.dot(ap, aq, m);
        if (gamma == 0.0 ||
            std::abs(gamma) <= tol * std::sqrt(alpha * beta)) {
          continue;
        }
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            std::abs(zeta) > 1e150
                ? 0.5 / zeta
                : std::copysign(1.0, zeta) /
                      (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        k.rotate(ap, aq, m, c, s);
        k.rotate(v.column(p), v.column(q), n, c, s);
        rotated = true;
      }
    }
    if (!rotated) return;
  }
}

}  // namespace

SvdResult jacobi_svd(const Matrix& input, const kernels::KernelTable& k) {
  for (double x : input.data()) {
    if (!std::isfinite(x)) {
      throw Error(ErrorCode::kNonFinite, "matrix holds a non-finite value");
    }
  }
  const bool wide = input.rows() < input.cols();
  Matrix a = wide ? transpose(input) : input;
  const std::size_t n = a.cols();
  Matrix v = Matrix::identity(n);
  hestenes_sweeps(a, v, k);

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    sigma[j] = std::sqrt(k.dot(a.column(j), a.column(j), a.rows()));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return sigma[x] > sigma[y];
  });

  // Columns of `a` are sigma_j u_j; columns of `v` are unit vectors.
  Matrix scaled(a.rows(), n);
  Matrix unit(n, n);
  SvdResult out;
  out.singular_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.singular_values[j] = sigma[src];
    std::copy_n(a.column(src), a.rows(), scaled.column(j));
    std::copy_n(v.column(src), n, unit.column(j));
  }
  if (wide) {
    out.left = std::move(unit);
    out.right = std::move(scaled);
  } else {
    out.left = std::move(scaled);
    out.right = std::move(unit);
  }
  return out;
}

SvdResult jacobi_svd(const Matrix& m) {
  return jacobi_svd(m, kernels::active());
}

Matrix reconstruct(const SvdResult& svd, std::size_t rank) {
  const std::size_t rows = svd.left.rows();
  const std::size_t cols = svd.right.rows();
  rank = std::min(rank, svd.singular_values.size());
  const auto& k = kernels::active();
  Matrix out(rows, cols);
  for (std::size_t j = 0; j < rank; ++j) {
    const double* l = svd.left.column(j);
    for (std::size_t c = 0; c < cols; ++c) {
      k.axpy(svd.right(c, j), l, out.column(c), rows);
    }
  }
  return out;
}

}  // namespace oddr
