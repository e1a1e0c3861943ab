// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace oddr::kernels {

const KernelTable* avx2_table() noexcept {
#if defined(ODDR_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &detail::avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(ODDR_HAVE_NEON)
  return &detail::neon_table_unchecked();
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& selected = []() -> const KernelTable& {
    const char* env = std::getenv("ODDR_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") {
      return scalar_table();
    }
    if (const KernelTable* t = avx2_table()) return *t;
    if (const KernelTable* t = neon_table()) return *t;
    return scalar_table();
  }();
  return selected;
}

}  // namespace oddr::kernels
