// SPDX-License-Identifier: Apache-2.0
#include "oddr/png_io.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <string>

#include "oddr/error.hpp"

namespace oddr {
namespace {

struct PngImage {
  png_image image;
  PngImage() {
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&image); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;

  std::string message() const { return image.message; }
};

}  // namespace

Image decode_png(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw Error(ErrorCode::kInvalidImage, "not a PNG stream");
  }
  PngImage png;
  if (!png_image_begin_read_from_memory(&png.image, bytes.data(),
                                        bytes.size())) {
    throw Error(ErrorCode::kInvalidImage, png.message());
  }
  if ((png.image.format & PNG_FORMAT_FLAG_LINEAR) != 0) {
    throw Error(ErrorCode::kInvalidImage, "16-bit PNG is not supported");
  }
  const bool color = (png.image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  const bool alpha = (png.image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  if (alpha) std::cerr << "warning: dropping PNG alpha channel\n";

  // Read with alpha kept so it can be dropped without compositing.
  png.image.format = color ? (alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB)
                           : (alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY);
  const int src_channels = PNG_IMAGE_SAMPLE_CHANNELS(png.image.format);
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(png.image));
  if (!png_image_finish_read(&png.image, nullptr, raw.data(), 0, nullptr)) {
    throw Error(ErrorCode::kInvalidImage, png.message());
  }

  const int height = static_cast<int>(png.image.height);
  const int width = static_cast<int>(png.image.width);
  const int channels = color ? 3 : 1;
  if (!alpha) return Image::from_bytes(height, width, channels, raw);

  std::vector<std::uint8_t> packed;
  packed.reserve(static_cast<std::size_t>(height) * width * channels);
  for (std::size_t px = 0; px < raw.size(); px += src_channels) {
    packed.insert(packed.end(), raw.begin() + px,
                  raw.begin() + px + channels);
  }
  return Image::from_bytes(height, width, channels, packed);
}

Image read_png(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_png(bytes);
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  PngImage png;
  png.image.width = static_cast<png_uint_32>(image.width());
  png.image.height = static_cast<png_uint_32>(image.height());
  png.image.format =
      image.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  const std::vector<std::uint8_t> bytes = image.to_bytes();

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png.image, nullptr, &size, 0, bytes.data(),
                                 0, nullptr)) {
    throw Error(ErrorCode::kIo, png.message());
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png.image, out.data(), &size, 0,
                                 bytes.data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, png.message());
  }
  out.resize(size);
  return out;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error(ErrorCode::kIo, "short write to " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::kIo, "cannot move " + tmp.string() + " into place: " +
                                    ec.message());
  }
}

void write_png(const std::filesystem::path& path, const Image& image) {
  write_file_atomic(path, encode_png(image));
}

}  // namespace oddr
