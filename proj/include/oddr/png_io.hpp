// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "oddr/image.hpp"

namespace oddr {

// 8-bit gray or RGB. Palette images are expanded, alpha is dropped with a
// warning on stderr, 16-bit input is rejected. Throws Error(kInvalidImage)
// or Error(kIo).
Image read_png(const std::filesystem::path& path);
Image decode_png(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> encode_png(const Image& image);
// Writes to a sibling temporary and renames it into place.
void write_png(const std::filesystem::path& path, const Image& image);

void write_file_atomic(const std::filesystem::path& path,
                       const std::vector<std::uint8_t>& bytes);

}  // namespace oddr
