// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "oddr/image.hpp"

namespace oddr {

// Pixel placement of one k x k window.
struct Window {
  int row0 = 0;
  int col0 = 0;
  int size = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

struct Fragment {
  std::size_t index = 0;
  int grid_row = 0;
  int grid_col = 0;
  std::span<const float> vector;
};

// All fully in-bounds k x k windows at the given stride, each flattened
// row-major over pixels and channel-last within a pixel. Fragment i sits at
// grid cell (i / grid_cols, i % grid_cols).
class FragmentGrid {
 public:
  FragmentGrid() = default;
  FragmentGrid(int kernel, int stride, int height, int width, int channels,
               std::vector<float> vectors);

  int kernel() const noexcept { return kernel_; }
  int stride() const noexcept { return stride_; }
  int grid_rows() const noexcept { return grid_rows_; }
  int grid_cols() const noexcept { return grid_cols_; }
  int source_height() const noexcept { return height_; }
  int source_width() const noexcept { return width_; }
  int source_channels() const noexcept { return channels_; }

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(grid_rows_) * grid_cols_;
  }
  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(kernel_) * kernel_ * channels_;
  }

  std::span<const float> vector(std::size_t index) const;
  Fragment fragment(std::size_t index) const;
  // n x dim, row-major.
  std::span<const float> vectors() const noexcept { return vectors_; }

 private:
  int kernel_ = 0;
  int stride_ = 0;
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  int grid_rows_ = 0;
  int grid_cols_ = 0;
  std::vector<float> vectors_;
};

// Windows per axis: floor((extent - k) / stride) + 1.
int window_count(int extent, int kernel, int stride);

// Throws Error(kKernelTooLarge) when k exceeds either image side and
// Error(kOutOfRange) for a stride outside [1, k].
FragmentGrid fragment_image(const Image& image, int kernel, int stride);

Window fragment_window(const FragmentGrid& grid, std::size_t index);

// True iff the two windows share at least one pixel.
bool windows_overlap(const FragmentGrid& grid, std::size_t i, std::size_t j);

}  // namespace oddr
