// SPDX-License-Identifier: Apache-2.0
// Reference kernels. Every SIMD variant is tested against these.
#include "oddr/kernels/kernels.hpp"

namespace oddr::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void rotate(double* x, double* y, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double scaled_sq_distance(const float* x, const double* mean,
                          const double* var, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = static_cast<double>(x[i]) - mean[i];
    sum += d * d / var[i];
  }
  return sum;
}

void accumulate_moments(const float* x, double* sum, double* sum_sq,
                        std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i];
    sum[i] += v;
    sum_sq[i] += v * v;
  }
}

constexpr KernelTable kScalar = {
    "scalar", dot, axpy, rotate, scaled_sq_distance, accumulate_moments,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace oddr::kernels
