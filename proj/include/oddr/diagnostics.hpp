// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "oddr/fragmentation.hpp"
#include "oddr/image.hpp"
#include "oddr/neutralization.hpp"
#include "oddr/rng.hpp"

namespace oddr {

inline constexpr double kVarianceFloor = 1e-8;

// Per-dimension mean and population variance across fragments. The
// covariance is kept diagonal: with k*k*C dimensions and only a few hundred
// fragments the full matrix is singular.
struct DistributionFit {
  std::vector<double> mean;
  std::vector<double> variance;  // floored at kVarianceFloor
};

struct MahalanobisProfile {
  std::vector<double> distances;
};

// Per-channel Gaussian parameters.
struct GaussianStats {
  std::vector<double> mean;
  std::vector<double> std;
};

DistributionFit fit_fragment_distribution(const FragmentGrid& grid);

// sqrt(sum_j (x_j - mean_j)^2 / var_j). Throws Error(kDimensionMismatch).
double mahalanobis(const DistributionFit& fit, std::span<const float> x);
MahalanobisProfile mahalanobis_profile(const DistributionFit& fit,
                                       const FragmentGrid& grid);

// Mean distance of fragments whose window intersects `region` divided by
// the mean distance of the rest; 1 when either group is empty.
double separation_gap(const MahalanobisProfile& profile,
                      const FragmentGrid& grid, const MaskRegion& region);

// Mean and population std of each channel over a rectangle.
GaussianStats region_gaussian_stats(const Image& image,
                                    const MaskRegion& region);

// Per-fragment, per-channel Gaussian fits averaged over `sample_count`
// fragments drawn without replacement (all fragments when sample_count is 0
// or at least n).
GaussianStats fragment_gaussian_stats(const FragmentGrid& grid,
                                      std::size_t sample_count,
                                      RngStream& rng);

struct ToleranceBounds {
  double max_mean_gap = 0.5;
  double min_std_ratio = 1.0;
  double max_std_ratio = 2.0;
};

// |mu - m| <= 0.5 and 1 <= sigma / std <= 2 on every channel. Throws
// Error(kZeroReferenceStd) if any reference std is not positive.
bool adaptive_tolerance_check(const GaussianStats& patch,
                              const GaussianStats& reference,
                              const ToleranceBounds& bounds = {});

// Header `fragment_index,row0,col0,distance`.
void write_profile_csv(std::ostream& out, const MahalanobisProfile& profile,
                       const FragmentGrid& grid);

}  // namespace oddr
