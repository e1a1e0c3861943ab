// SPDX-License-Identifier: Apache-2.0
#include "oddr/pipeline.hpp"

#include "oddr/rng.hpp"

namespace oddr {

DefenseOutcome defend(const Image& image, const ValidatedConfig& cfg,
                      NeutralizationMode mode) {
  check_fits_image(cfg, image.height(), image.width());

  DefenseOutcome out;
  out.grid = fragment_image(image, cfg.kernel, cfg.stride);
  if (out.grid.size() < 2) {
    // A single window has nothing to be an outlier against.
    out.image = image;
    return out;
  }

  out.report = score_fragments(out.grid, cfg, derive_stream(cfg.seed, 0));
  out.outliers = drop_indistinct(select_outliers(out.report, cfg.confidence),
                                 out.report);
  out.clusters =
      cluster_outliers(out.outliers, out.grid, out.report, cfg.min_pts);

  NeutralizationResult neutralized =
      neutralize(image, out.clusters, out.grid, cfg.mask_size,
                 cfg.info_fraction, mode);
  out.image = std::move(neutralized.image);
  out.neutralized = std::move(neutralized.clusters);
  return out;
}

}  // namespace oddr
