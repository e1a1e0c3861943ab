// SPDX-License-Identifier: Apache-2.0
// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached after a
// runtime CPU check.
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace oddr::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void rotate(double* x, double* y, std::size_t n, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
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
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_cvtps_pd(_mm_loadu_ps(x + i));
    const __m256d d = _mm256_sub_pd(xi, _mm256_loadu_pd(mean + i));
    acc = _mm256_add_pd(
        acc, _mm256_div_pd(_mm256_mul_pd(d, d), _mm256_loadu_pd(var + i)));
  }
  double sum = hsum(acc);
  for (; i < n; ++i) {
    const double d = static_cast<double>(x[i]) - mean[i];
    sum += d * d / var[i];
  }
  return sum;
}

void accumulate_moments(const float* x, double* sum, double* sum_sq,
                        std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_cvtps_pd(_mm_loadu_ps(x + i));
    _mm256_storeu_pd(sum + i, _mm256_add_pd(_mm256_loadu_pd(sum + i), v));
    _mm256_storeu_pd(sum_sq + i,
                     _mm256_fmadd_pd(v, v, _mm256_loadu_pd(sum_sq + i)));
  }
  for (; i < n; ++i) {
    const double v = x[i];
    sum[i] += v;
    sum_sq[i] += v * v;
  }
}

constexpr KernelTable kAvx2 = {
    "avx2", dot, axpy, rotate, scaled_sq_distance, accumulate_moments,
};

}  // namespace

const KernelTable& detail::avx2_table_unchecked() noexcept { return kAvx2; }

}  // namespace oddr::kernels
