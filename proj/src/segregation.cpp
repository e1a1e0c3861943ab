// SPDX-License-Identifier: Apache-2.0
#include "oddr/segregation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oddr/error.hpp"
#include "oddr/iforest.hpp"

namespace oddr {

AnomalyReport make_report(std::vector<double> scores) {
  AnomalyReport report;
  report.ranking.resize(scores.size());
  std::iota(report.ranking.begin(), report.ranking.end(), std::size_t{0});
  std::stable_sort(report.ranking.begin(), report.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  report.scores = std::move(scores);
  return report;
}

std::size_t subsample_size_for(std::size_t fragment_count, double fraction) {
  const auto rounded = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(fragment_count)));
  return std::min(fragment_count, std::max<std::size_t>(2, rounded));
}

AnomalyReport score_fragments(const FragmentGrid& grid,
                              const ValidatedConfig& cfg,
                              const RngStream& rng) {
  const std::size_t n = grid.size();
  if (n < 2) {
    throw Error(ErrorCode::kSubsampleTooSmall,
                "scoring needs at least 2 fragments");
  }
  const PointMatrix points(grid.vectors(), grid.dim());
  const std::size_t s = subsample_size_for(n, cfg.subsample_fraction);
  const IsolationForest forest = build_forest(points, cfg.trees, s, rng);

  std::vector<double> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = anomaly_score(forest, points.row(i));
  }
  return make_report(std::move(scores));
}

OutlierSet select_outliers(const AnomalyReport& report, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "confidence must lie in (0, 1)");
  }
  const std::size_t n = report.ranking.size();
  const auto budget = static_cast<std::size_t>(
      std::floor((1.0 - confidence) * static_cast<double>(n)));
  OutlierSet out;
  out.threshold_rank = std::min(n, std::max<std::size_t>(1, budget));
  out.members.assign(report.ranking.begin(),
                     report.ranking.begin() + out.threshold_rank);
  return out;
}

OutlierSet drop_indistinct(const OutlierSet& outliers,
                           const AnomalyReport& report) {
  if (report.scores.empty()) return outliers;
  const double floor_score =
      *std::min_element(report.scores.begin(), report.scores.end());
  OutlierSet out;
  for (std::size_t m : outliers.members) {
    if (report.scores[m] > floor_score) out.members.push_back(m);
  }
  out.threshold_rank = out.members.size();
  return out;
}

std::size_t cluster_center(const std::vector<std::size_t>& members,
                           const AnomalyReport& report) {
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "cluster has no members");
  }
  std::size_t best = members.front();
  for (std::size_t m : members) {
    const double s = report.scores[m];
    if (s > report.scores[best] || (s == report.scores[best] && m < best)) {
      best = m;
    }
  }
  return best;
}

ClusterSet cluster_outliers(const OutlierSet& outliers,
                            const FragmentGrid& grid,
                            const AnomalyReport& report, int min_pts) {
  std::vector<std::size_t> vertices = outliers.members;
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

  const std::size_t count = vertices.size();
  std::vector<int> label(count, -1);
  ClusterSet clusters;
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < count; ++seed) {
    if (label[seed] >= 0) continue;
    const int id = static_cast<int>(clusters.size());
    Cluster cluster;
    label[seed] = id;
    stack.assign(1, seed);
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      cluster.members.push_back(vertices[v]);
      for (std::size_t u = 0; u < count; ++u) {
        if (label[u] < 0 && windows_overlap(grid, vertices[v], vertices[u])) {
          label[u] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(cluster.members.begin(), cluster.members.end());
    clusters.push_back(std::move(cluster));
  }

  std::erase_if(clusters, [&](const Cluster& c) {
    return c.members.size() < static_cast<std::size_t>(std::max(min_pts, 1));
  });
  for (auto& c : clusters) c.center = cluster_center(c.members, report);
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster& a, const Cluster& b) {
              if (a.members.size() != b.members.size()) {
                return a.members.size() > b.members.size();
              }
              return a.center < b.center;
            });
  return clusters;
}

}  // namespace oddr
