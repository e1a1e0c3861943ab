// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace oddr {

// H x W x C raster, row-major and channel-last, intensities in [0, 1].
class Image {
 public:
  Image() = default;
  Image(int height, int width, int channels, float fill = 0.0f);

  // Validates shape and range; throws Error(kInvalidImage) otherwise.
  static Image from_data(int height, int width, int channels,
                         std::vector<float> data);
  // 8-bit samples, v = p / 255.
  static Image from_bytes(int height, int width, int channels,
                          std::span<const std::uint8_t> bytes);

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  int channels() const noexcept { return channels_; }
  std::size_t size() const noexcept { return data_.size(); }

  std::size_t offset(int row, int col, int channel = 0) const noexcept {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_ + channel;
  }
  float at(int row, int col, int channel = 0) const noexcept {
    return data_[offset(row, col, channel)];
  }
  float& at(int row, int col, int channel = 0) noexcept {
    return data_[offset(row, col, channel)];
  }

  std::span<const float> data() const noexcept { return data_; }
  std::span<float> data() noexcept { return data_; }

  // p = round(255 v), clamped to [0, 255].
  std::vector<std::uint8_t> to_bytes() const;
  // Returns a copy with every sample clamped into [0, 1]; NaN maps to 0.
  Image clamped() const;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

std::uint8_t quantize(float v) noexcept;

}  // namespace oddr
