// SPDX-License-Identifier: Apache-2.0
// AArch64 NEON kernels (two doubles per register). NEON is part of the
// AArch64 baseline, so no runtime check is needed.
#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace oddr::kernels {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void rotate(double* x, double* y, std::size_t n, double c, double s) {
  const float64x2_t vc = vdupq_n_f64(c);
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xi = vld1q_f64(x + i);
    const float64x2_t yi = vld1q_f64(y + i);
    vst1q_f64(x + i, vfmsq_f64(vmulq_f64(vc, xi), vs, yi));
    vst1q_f64(y + i, vfmaq_f64(vmulq_f64(vc, yi), vs, xi));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

double scaled_sq_distance(const float* x, const double* mean,
                          const double* var, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xi = vcvt_f64_f32(vld1_f32(x + i));
    const float64x2_t d = vsubq_f64(xi, vld1q_f64(mean + i));
    acc = vaddq_f64(acc, vdivq_f64(vmulq_f64(d, d), vld1q_f64(var + i)));
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = static_cast<double>(x[i]) - mean[i];
    sum += d * d / var[i];
  }
  return sum;
}

void accumulate_moments(const float* x, double* sum, double* sum_sq,
                        std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vcvt_f64_f32(vld1_f32(x + i));
    vst1q_f64(sum + i, vaddq_f64(vld1q_f64(sum + i), v));
    vst1q_f64(sum_sq + i, vfmaq_f64(vld1q_f64(sum_sq + i), v, v));
  }
  for (; i < n; ++i) {
    const double v = x[i];
    sum[i] += v;
    sum_sq[i] += v * v;
  }
}

constexpr KernelTable kNeon = {
    "neon", dot, axpy, rotate, scaled_sq_distance, accumulate_moments,
};

}  // namespace

const KernelTable& detail::neon_table_unchecked() noexcept { return kNeon; }

}  // namespace oddr::kernels
