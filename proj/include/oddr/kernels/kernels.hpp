// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string_view>

// Arithmetic inner loops shared by the SVD, the diagnostics and the
// neutralizer. Each entry has a scalar reference implementation and, where
// the build and the CPU allow, an AVX2+FMA (x86-64) or NEON (AArch64)
// variant. The variant is picked once per process; ODDR_SIMD=scalar forces
// the reference path.
namespace oddr::kernels {

struct KernelTable {
  std::string_view name;

  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // (x, y) <- (c x - s y, s x + c y), elementwise
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
  // sum_i (x[i] - mean[i])^2 / var[i]
  double (*scaled_sq_distance)(const float* x, const double* mean,
                               const double* var, std::size_t n);
  // sum[i] += x[i]; sum_sq[i] += x[i]^2
  void (*accumulate_moments)(const float* x, double* sum, double* sum_sq,
                             std::size_t n);
};

const KernelTable& scalar_table() noexcept;
// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

// The process-wide selection.
const KernelTable& active() noexcept;

}  // namespace oddr::kernels
