// SPDX-License-Identifier: Apache-2.0
#include "oddr/neutralization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oddr/error.hpp"

namespace oddr {

std::string_view to_string(NeutralizationMode mode) {
  return mode == NeutralizationMode::kMean ? "mean" : "svd";
}

std::optional<NeutralizationMode> parse_mode(std::string_view text) {
  if (text == "svd") return NeutralizationMode::kSvd;
  if (text == "mean") return NeutralizationMode::kMean;
  return std::nullopt;
}

MaskRegion make_mask(const Window& center_window, int mask_size, int height,
                     int width) {
  if (mask_size < 1 || mask_size > height || mask_size > width) {
    throw Error(ErrorCode::kMaskTooLarge,
                "mask " + std::to_string(mask_size) + " does not fit " +
                    std::to_string(height) + "x" + std::to_string(width));
  }
  const int center_row = center_window.row0 + center_window.size / 2;
  const int center_col = center_window.col0 + center_window.size / 2;
  const int half = mask_size / 2;
  MaskRegion region;
  region.size = mask_size;
  region.row0 = std::clamp(center_row - half, 0, height - mask_size);
  region.col0 = std::clamp(center_col - half, 0, width - mask_size);
  return region;
}

std::size_t truncation_rank(const std::vector<double>& singular_values,
                            double info_fraction, double* preserved) {
  double total = 0.0;
  for (double s : singular_values) total += s;
  if (singular_values.empty() || !(total > 0.0)) {
    if (preserved != nullptr) *preserved = 1.0;
    return 1;
  }
  if (info_fraction >= 1.0) {
    if (preserved != nullptr) *preserved = 1.0;
    return singular_values.size();
  }
  double running = 0.0;
  for (std::size_t k = 0; k < singular_values.size(); ++k) {
    running += singular_values[k];
    // The last term closes the sum exactly, so the loop always returns.
    const double fraction =
        k + 1 == singular_values.size() ? 1.0 : running / total;
    if (fraction >= info_fraction) {
      if (preserved != nullptr) *preserved = fraction;
      return k + 1;
    }
  }
  if (preserved != nullptr) *preserved = 1.0;
  return singular_values.size();
}

std::pair<Matrix, TruncationResult> truncate_channel(const Matrix& m,
                                                     double info_fraction) {
  if (!(info_fraction > 0.0 && info_fraction <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "inf must lie in (0, 1]");
  }
  const SvdResult svd = jacobi_svd(m);
  TruncationResult result;
  result.rank = truncation_rank(svd.singular_values, info_fraction,
                                &result.preserved);
  return {reconstruct(svd, result.rank), result};
}

namespace {

Matrix extract(const Image& image, const MaskRegion& region, int channel) {
  Matrix m(static_cast<std::size_t>(region.size),
           static_cast<std::size_t>(region.size));
  for (int c = 0; c < region.size; ++c) {
    for (int r = 0; r < region.size; ++r) {
      m(r, c) = image.at(region.row0 + r, region.col0 + c, channel);
    }
  }
  return m;
}

float clamp_unit(double v) {
  if (!(v > 0.0)) return 0.0f;
  return static_cast<float>(std::min(v, 1.0));
}

}  // namespace

NeutralizationResult neutralize(const Image& image, const ClusterSet& clusters,
                                const FragmentGrid& grid, int mask_size,
                                double info_fraction,
                                NeutralizationMode mode) {
  NeutralizationResult out;
  out.image = image;
  for (const Cluster& cluster : clusters) {
    ClusterOutcome outcome;
    outcome.center = cluster.center;
    outcome.member_count = cluster.members.size();
    outcome.mask = make_mask(fragment_window(grid, cluster.center), mask_size,
                             image.height(), image.width());
    const MaskRegion& region = outcome.mask;

    for (int ch = 0; ch < image.channels(); ++ch) {
      const Matrix block = extract(out.image, region, ch);
      ChannelOutcome channel;
      Matrix replacement;
      if (mode == NeutralizationMode::kSvd) {
        auto [recon, truncation] = truncate_channel(block, info_fraction);
        replacement = std::move(recon);
        channel.truncation = truncation;
      } else {
        double sum = 0.0;
        for (double v : block.data()) sum += v;
        channel.mean = sum / static_cast<double>(block.data().size());
        replacement = Matrix(block.rows(), block.cols(), channel.mean);
      }
      for (int c = 0; c < region.size; ++c) {
        for (int r = 0; r < region.size; ++r) {
          const double v = replacement(r, c);
          if (!std::isfinite(v)) {
            throw Error(ErrorCode::kNonFinite, "reconstruction diverged");
          }
          out.image.at(region.row0 + r, region.col0 + c, ch) = clamp_unit(v);
        }
      }
      outcome.channels.push_back(channel);
    }
    out.clusters.push_back(std::move(outcome));
  }
  return out;
}

}  // namespace oddr
