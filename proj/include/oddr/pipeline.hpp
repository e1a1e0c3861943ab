// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "oddr/config.hpp"
#include "oddr/fragmentation.hpp"
#include "oddr/image.hpp"
#include "oddr/neutralization.hpp"
#include "oddr/segregation.hpp"

namespace oddr {

struct DefenseOutcome {
  Image image;
  FragmentGrid grid;
  AnomalyReport report;
  OutlierSet outliers;
  ClusterSet clusters;
  std::vector<ClusterOutcome> neutralized;

  bool detected() const noexcept { return !clusters.empty(); }
};

// Fragmentation, segregation and neutralization end to end. The forest draws
// from derive_stream(cfg.seed, 0).
DefenseOutcome defend(const Image& image, const ValidatedConfig& cfg,
                      NeutralizationMode mode = NeutralizationMode::kSvd);

}  // namespace oddr
