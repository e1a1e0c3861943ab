// SPDX-License-Identifier: Apache-2.0
#include "oddr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oddr/error.hpp"
#include "oddr/kernels/kernels.hpp"

namespace oddr {

DistributionFit fit_fragment_distribution(const FragmentGrid& grid) {
  const std::size_t n = grid.size();
  const std::size_t dim = grid.dim();
  if (n == 0) throw Error(ErrorCode::kEmptyDataset, "grid has no fragments");

  const auto& k = kernels::active();
  std::vector<double> sum(dim, 0.0);
  std::vector<double> sum_sq(dim, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    k.accumulate_moments(grid.vector(i).data(), sum.data(), sum_sq.data(), dim);
  }

  DistributionFit fit;
  fit.mean.resize(dim);
  fit.variance.resize(dim);
  const double count = static_cast<double>(n);
  for (std::size_t j = 0; j < dim; ++j) {
    const double mean = sum[j] / count;
    const double var = sum_sq[j] / count - mean * mean;
    fit.mean[j] = mean;
    fit.variance[j] = std::max(var, kVarianceFloor);
  }
  return fit;
}

double mahalanobis(const DistributionFit& fit, std::span<const float> x) {
  if (x.size() != fit.mean.size() || fit.variance.size() != fit.mean.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector has " + std::to_string(x.size()) +
                    " dims, distribution has " +
                    std::to_string(fit.mean.size()));
  }
  const double sq = kernels::active().scaled_sq_distance(
      x.data(), fit.mean.data(), fit.variance.data(), x.size());
  return std::sqrt(std::max(sq, 0.0));
}

MahalanobisProfile mahalanobis_profile(const DistributionFit& fit,
                                       const FragmentGrid& grid) {
  MahalanobisProfile profile;
  profile.distances.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    profile.distances[i] = mahalanobis(fit, grid.vector(i));
  }
  return profile;
}

namespace {

bool intersects(const Window& w, const MaskRegion& r) {
  return w.row0 < r.row0 + r.size && r.row0 < w.row0 + w.size &&
         w.col0 < r.col0 + r.size && r.col0 < w.col0 + w.size;
}

}  // namespace

double separation_gap(const MahalanobisProfile& profile,
                      const FragmentGrid& grid, const MaskRegion& region) {
  if (profile.distances.size() != grid.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "profile does not match the fragment grid");
  }
  double inside = 0.0;
  double outside = 0.0;
  std::size_t n_inside = 0;
  std::size_t n_outside = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (intersects(fragment_window(grid, i), region)) {
      inside += profile.distances[i];
      ++n_inside;
    } else {
      outside += profile.distances[i];
      ++n_outside;
    }
  }
  if (n_inside == 0 || n_outside == 0) return 1.0;
  const double mean_in = inside / static_cast<double>(n_inside);
  const double mean_out = outside / static_cast<double>(n_outside);
  if (mean_out == 0.0) return mean_in == 0.0 ? 1.0 : HUGE_VAL;
  return mean_in / mean_out;
}

GaussianStats region_gaussian_stats(const Image& image,
                                    const MaskRegion& region) {
  if (region.size < 1 || region.row0 < 0 || region.col0 < 0 ||
      region.row0 + region.size > image.height() ||
      region.col0 + region.size > image.width()) {
    throw Error(ErrorCode::kOutOfRange, "region outside the image");
  }
  const int channels = image.channels();
  GaussianStats stats;
  stats.mean.assign(channels, 0.0);
  stats.std.assign(channels, 0.0);
  const double count = static_cast<double>(region.size) * region.size;
  for (int ch = 0; ch < channels; ++ch) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int r = 0; r < region.size; ++r) {
      for (int c = 0; c < region.size; ++c) {
        const double v = image.at(region.row0 + r, region.col0 + c, ch);
        sum += v;
        sum_sq += v * v;
      }
    }
    const double mean = sum / count;
    stats.mean[ch] = mean;
    stats.std[ch] = std::sqrt(std::max(sum_sq / count - mean * mean, 0.0));
  }
  return stats;
}

GaussianStats fragment_gaussian_stats(const FragmentGrid& grid,
                                      std::size_t sample_count,
                                      RngStream& rng) {
  const std::size_t n = grid.size();
  if (n == 0) throw Error(ErrorCode::kEmptyDataset, "grid has no fragments");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t take = n;
  if (sample_count != 0 && sample_count < n) {
    take = sample_count;
    for (std::size_t i = 0; i < take; ++i) {
      std::swap(order[i], order[i + rng.below(n - i)]);
    }
  }

  const int channels = grid.source_channels();
  const std::size_t pixels =
      static_cast<std::size_t>(grid.kernel()) * grid.kernel();
  GaussianStats stats;
  stats.mean.assign(channels, 0.0);
  stats.std.assign(channels, 0.0);
  for (std::size_t t = 0; t < take; ++t) {
    const auto v = grid.vector(order[t]);
    for (int ch = 0; ch < channels; ++ch) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (std::size_t p = 0; p < pixels; ++p) {
        const double x = v[p * channels + ch];
        sum += x;
        sum_sq += x * x;
      }
      const double mean = sum / static_cast<double>(pixels);
      stats.mean[ch] += mean;
      stats.std[ch] += std::sqrt(
          std::max(sum_sq / static_cast<double>(pixels) - mean * mean, 0.0));
    }
  }
  for (int ch = 0; ch < channels; ++ch) {
    stats.mean[ch] /= static_cast<double>(take);
    stats.std[ch] /= static_cast<double>(take);
  }
  return stats;
}

bool adaptive_tolerance_check(const GaussianStats& patch,
                              const GaussianStats& reference,
                              const ToleranceBounds& bounds) {
  if (patch.mean.size() != reference.mean.size() ||
      patch.std.size() != reference.std.size() ||
      patch.mean.size() != patch.std.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "channel counts differ");
  }
  for (double s : reference.std) {
    if (!(s > 0.0)) {
      throw Error(ErrorCode::kZeroReferenceStd,
                  "reference std must be positive");
    }
  }
  bool pass = true;
  for (std::size_t ch = 0; ch < patch.mean.size(); ++ch) {
    const double gap = std::abs(patch.mean[ch] - reference.mean[ch]);
    const double ratio = patch.std[ch] / reference.std[ch];
    pass = pass && gap <= bounds.max_mean_gap &&
           ratio >= bounds.min_std_ratio && ratio <= bounds.max_std_ratio;
  }
  return pass;
}

void write_profile_csv(std::ostream& out, const MahalanobisProfile& profile,
                       const FragmentGrid& grid) {
  out << "fragment_index,row0,col0,distance\n";
  const auto old_precision = out.precision(10);
  for (std::size_t i = 0; i < profile.distances.size(); ++i) {
    const Window w = fragment_window(grid, i);
    out << i << ',' << w.row0 << ',' << w.col0 << ',' << profile.distances[i]
        << '\n';
  }
  out.precision(old_precision);
}

}  // namespace oddr
