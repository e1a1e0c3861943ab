// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "oddr/kernels/kernels.hpp"

namespace oddr::kernels::detail {

// Defined only in translation units built for the matching ISA.
const KernelTable& avx2_table_unchecked() noexcept;
const KernelTable& neon_table_unchecked() noexcept;

}  // namespace oddr::kernels::detail
