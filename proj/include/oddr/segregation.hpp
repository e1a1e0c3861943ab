// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "oddr/config.hpp"
#include "oddr/fragmentation.hpp"
#include "oddr/rng.hpp"

namespace oddr {

struct AnomalyReport {
  std::vector<double> scores;        // aligned with fragment indices
  std::vector<std::size_t> ranking;  // descending score, ties by index
};

struct OutlierSet {
  std::vector<std::size_t> members;  // first `threshold_rank` of ranking
  std::size_t threshold_rank = 0;
};

struct Cluster {
  std::vector<std::size_t> members;  // ascending
  std::size_t center = 0;
};

using ClusterSet = std::vector<Cluster>;

AnomalyReport make_report(std::vector<double> scores);

// max(2, round(fraction * n)), never more than n.
std::size_t subsample_size_for(std::size_t fragment_count, double fraction);

// Trains an isolation forest on the grid's own fragments and scores each.
AnomalyReport score_fragments(const FragmentGrid& grid,
                              const ValidatedConfig& cfg, const RngStream& rng);

// r = max(1, floor((1 - c) n)) highest-ranked fragments.
OutlierSet select_outliers(const AnomalyReport& report, double confidence);

// Drops members whose score equals the lowest score in the report. When
// every fragment scores the same the forest has found nothing to isolate,
// and the rank cut alone would otherwise flag an arbitrary index block.
OutlierSet drop_indistinct(const OutlierSet& outliers,
                           const AnomalyReport& report);

// Argmax score over members, lowest index on ties.
std::size_t cluster_center(const std::vector<std::size_t>& members,
                           const AnomalyReport& report);

// Connected components of the window-overlap graph over the outliers,
// keeping those with at least min_pts members. Ordered by descending size,
// then ascending center index.
ClusterSet cluster_outliers(const OutlierSet& outliers,
                            const FragmentGrid& grid,
                            const AnomalyReport& report, int min_pts);

}  // namespace oddr
