// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "oddr/image.hpp"
#include "oddr/neutralization.hpp"
#include "oddr/rng.hpp"

namespace oddr {

enum class PatchKind { kNoise, kChecker, kMatched };

std::string_view to_string(PatchKind kind);
std::optional<PatchKind> parse_patch_kind(std::string_view text);

inline constexpr std::array<int, 5> kPatchSizes = {38, 41, 44, 47, 50};

// x0 is a column and y0 a row, both of the top-left pixel.
struct PatchSpec {
  PatchKind kind = PatchKind::kNoise;
  int x0 = 0;
  int y0 = 0;
  int size = 38;
  std::uint64_t stream_index = 0;
};

struct GroundTruth {
  MaskRegion region;
};

// Bilinear ramp spanning [0.2, 0.8]; channel c runs along a different
// diagonal so the channels are not copies of each other.
Image gradient_background(int height, int width, int channels);

// noise: i.i.d. U[0, 1] samples. checker: 2-pixel 0/1 blocks. matched:
// pixels bootstrapped from the host pixels under the patch footprint.
// Throws Error(kPatchOutOfBounds).
std::pair<Image, GroundTruth> inject(const Image& image, const PatchSpec& spec,
                                     RngStream& rng);
// Uses derive_stream(seed, spec.stream_index).
std::pair<Image, GroundTruth> inject(const Image& image, const PatchSpec& spec,
                                     std::uint64_t seed);

// Ground-truth sidecar: one line `x0 y0 size`.
std::string format_sidecar(const GroundTruth& truth);
GroundTruth parse_sidecar(std::istream& in);

}  // namespace oddr
