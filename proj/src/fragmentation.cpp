// SPDX-License-Identifier: Apache-2.0
#include "oddr/fragmentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "oddr/error.hpp"

namespace oddr {

int window_count(int extent, int kernel, int stride) {
  if (kernel > extent) return 0;
  return (extent - kernel) / stride + 1;
}

FragmentGrid::FragmentGrid(int kernel, int stride, int height, int width,
                           int channels, std::vector<float> vectors)
    : kernel_(kernel),
      stride_(stride),
      height_(height),
      width_(width),
      channels_(channels),
      grid_rows_(window_count(height, kernel, stride)),
      grid_cols_(window_count(width, kernel, stride)),
      vectors_(std::move(vectors)) {
  if (vectors_.size() != size() * dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "fragment storage does not match the grid shape");
  }
}

std::span<const float> FragmentGrid::vector(std::size_t index) const {
  if (index >= size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "fragment " + std::to_string(index) + " of " +
                    std::to_string(size()));
  }
  return std::span<const float>(vectors_).subspan(index * dim(), dim());
}

Fragment FragmentGrid::fragment(std::size_t index) const {
  Fragment f;
  f.vector = vector(index);
  f.index = index;
  f.grid_row = static_cast<int>(index / grid_cols_);
  f.grid_col = static_cast<int>(index % grid_cols_);
  return f;
}

FragmentGrid fragment_image(const Image& image, int kernel, int stride) {
  const int height = image.height();
  const int width = image.width();
  const int channels = image.channels();
  if (kernel < 1) {
    throw Error(ErrorCode::kOutOfRange, "kernel must be at least 1");
  }
  if (kernel > height || kernel > width) {
    throw Error(ErrorCode::kKernelTooLarge,
                "kernel " + std::to_string(kernel) + " does not fit " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
  if (stride < 1 || stride > kernel) {
    throw Error(ErrorCode::kOutOfRange,
                "stride " + std::to_string(stride) + " outside [1, k]");
  }

  const int rows = window_count(height, kernel, stride);
  const int cols = window_count(width, kernel, stride);
  const std::size_t row_len = static_cast<std::size_t>(kernel) * channels;
  const std::size_t dim = row_len * kernel;
  std::vector<float> vectors(static_cast<std::size_t>(rows) * cols * dim);

  const std::span<const float> src = image.data();
  float* out = vectors.data();
  for (int gr = 0; gr < rows; ++gr) {
    for (int gc = 0; gc < cols; ++gc) {
      const int row0 = gr * stride;
      const int col0 = gc * stride;
      for (int r = 0; r < kernel; ++r) {
        const float* line = src.data() + image.offset(row0 + r, col0);
        out = std::copy(line, line + row_len, out);
      }
    }
  }
  return FragmentGrid(kernel, stride, height, width, channels,
                      std::move(vectors));
}

Window fragment_window(const FragmentGrid& grid, std::size_t index) {
  const Fragment f = grid.fragment(index);
  return {f.grid_row * grid.stride(), f.grid_col * grid.stride(),
          grid.kernel()};
}

bool windows_overlap(const FragmentGrid& grid, std::size_t i, std::size_t j) {
  const Window a = fragment_window(grid, i);
  const Window b = fragment_window(grid, j);
  return std::abs(a.row0 - b.row0) < grid.kernel() &&
         std::abs(a.col0 - b.col0) < grid.kernel();
}

}  // namespace oddr
