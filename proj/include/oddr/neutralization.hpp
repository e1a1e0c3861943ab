// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "oddr/fragmentation.hpp"
#include "oddr/image.hpp"
#include "oddr/segregation.hpp"
#include "oddr/svd.hpp"

namespace oddr {

struct MaskRegion {
  int row0 = 0;
  int col0 = 0;
  int size = 0;

  friend bool operator==(const MaskRegion&, const MaskRegion&) = default;
};

struct TruncationResult {
  std::size_t rank = 0;
  double preserved = 0.0;  // retained fraction of the singular-value sum
};

enum class NeutralizationMode { kSvd, kMean };

std::string_view to_string(NeutralizationMode mode);
std::optional<NeutralizationMode> parse_mode(std::string_view text);

// d x d box centred on the window's central pixel (row0 + k/2, col0 + k/2),
// shifted (never shrunk) to lie inside the image.
MaskRegion make_mask(const Window& center_window, int mask_size, int height,
                     int width);

// Smallest rank whose leading singular values hold at least `info_fraction`
// of the total singular-value sum (rank 1 for an all-zero matrix).
std::size_t truncation_rank(const std::vector<double>& singular_values,
                            double info_fraction, double* preserved = nullptr);

std::pair<Matrix, TruncationResult> truncate_channel(const Matrix& m,
                                                     double info_fraction);

struct ChannelOutcome {
  TruncationResult truncation;  // svd mode
  double mean = 0.0;            // mean mode
};

struct ClusterOutcome {
  std::size_t center = 0;
  std::size_t member_count = 0;
  MaskRegion mask;
  std::vector<ChannelOutcome> channels;
};

struct NeutralizationResult {
  Image image;
  std::vector<ClusterOutcome> clusters;
};

// Applies masks in cluster order; later masks see earlier writes. Samples
// outside every mask are copied untouched; rewritten samples are clamped to
// [0, 1].
NeutralizationResult neutralize(const Image& image, const ClusterSet& clusters,
                                const FragmentGrid& grid, int mask_size,
                                double info_fraction,
                                NeutralizationMode mode = NeutralizationMode::kSvd);

}  // namespace oddr
