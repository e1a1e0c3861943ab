// SPDX-License-Identifier: Apache-2.0
#include "oddr/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oddr/error.hpp"

namespace oddr {
namespace {

void check_shape(int height, int width, int channels) {
  if (height <= 0 || width <= 0) {
    throw Error(ErrorCode::kInvalidImage,
                "image dimensions must be positive, got " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
  if (channels != 1 && channels != 3) {
    throw Error(ErrorCode::kInvalidImage,
                "expected 1 or 3 channels, got " + std::to_string(channels));
  }
}

}  // namespace

Image::Image(int height, int width, int channels, float fill)
    : height_(height), width_(width), channels_(channels) {
  check_shape(height, width, channels);
  data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

Image Image::from_data(int height, int width, int channels,
                       std::vector<float> data) {
  check_shape(height, width, channels);
  const std::size_t expected =
      static_cast<std::size_t>(height) * width * channels;
  if (data.size() != expected) {
    throw Error(ErrorCode::kInvalidImage,
                "expected " + std::to_string(expected) + " samples, got " +
                    std::to_string(data.size()));
  }
  for (float v : data) {
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw Error(ErrorCode::kInvalidImage,
                  "sample outside [0, 1]: " + std::to_string(v));
    }
  }
  Image image;
  image.height_ = height;
  image.width_ = width;
  image.channels_ = channels;
  image.data_ = std::move(data);
  return image;
}

Image Image::from_bytes(int height, int width, int channels,
                        std::span<const std::uint8_t> bytes) {
  std::vector<float> data(bytes.size());
  std::transform(bytes.begin(), bytes.end(), data.begin(),
                 [](std::uint8_t p) { return static_cast<float>(p / 255.0); });
  return from_data(height, width, channels, std::move(data));
}

std::uint8_t quantize(float v) noexcept {
  if (!(v > 0.0f)) return 0;
  const double p = std::round(255.0 * static_cast<double>(v));
  return static_cast<std::uint8_t>(std::min(p, 255.0));
}

std::vector<std::uint8_t> Image::to_bytes() const {
  std::vector<std::uint8_t> bytes(data_.size());
  std::transform(data_.begin(), data_.end(), bytes.begin(), quantize);
  return bytes;
}

Image Image::clamped() const {
  Image out = *this;
  for (float& v : out.data_) {
    v = (v > 0.0f) ? std::min(v, 1.0f) : 0.0f;
  }
  return out;
}

}  // namespace oddr
