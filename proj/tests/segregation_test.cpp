// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "oddr/segregation.hpp"

namespace oddr {
namespace {

FragmentGrid grid_224() { return fragment_image(Image(224, 224, 1), 20, 10); }

TEST(Segregation, Sizes) {
  EXPECT_EQ(subsample_size_for(441, 0.3), 132u);
  EXPECT_EQ(subsample_size_for(2, 0.3), 2u);
  EXPECT_EQ(subsample_size_for(5, 1.0), 5u);
  EXPECT_EQ(select_outliers(make_report(std::vector<double>(441, 0.4)), 0.8)
                .threshold_rank,
            88u);
  EXPECT_EQ(select_outliers(make_report(std::vector<double>(10, 0.4)), 0.99)
                .members.size(),
            1u);
}

TEST(Segregation, TieRule) {
  const AnomalyReport r = make_report(std::vector<double>(5, 0.5));
  const OutlierSet z = select_outliers(r, 0.5);
  EXPECT_EQ(z.members, (std::vector<std::size_t>{0, 1}));

  const AnomalyReport mixed = make_report({0.3, 0.9, 0.3, 0.9, 0.1});
  EXPECT_EQ(mixed.ranking, (std::vector<std::size_t>{1, 3, 0, 2, 4}));
}

TEST(Segregation, OutliersDominateNonMembers) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 200;
    std::vector<double> scores(n);
    for (double& s : scores) s = static_cast<double>(gen() % 20) / 20.0;
    const double c = std::uniform_real_distribution<double>(0.01, 0.99)(gen);
    const AnomalyReport r = make_report(scores);
    const OutlierSet z = select_outliers(r, c);
    const std::size_t expect =
        std::max<std::size_t>(1, static_cast<std::size_t>((1.0 - c) * n));
    ASSERT_EQ(z.members.size(), expect);
    const std::set<std::size_t> in(z.members.begin(), z.members.end());
    double min_in = 2.0;
    for (std::size_t m : z.members) min_in = std::min(min_in, scores[m]);
    for (std::size_t i = 0; i < n; ++i) {
      if (!in.count(i)) ASSERT_LE(scores[i], min_in);
    }
  }
}

TEST(Segregation, DropIndistinct) {
  const AnomalyReport flat = make_report(std::vector<double>(6, 0.5));
  EXPECT_TRUE(drop_indistinct(select_outliers(flat, 0.5), flat).members.empty());
  const AnomalyReport r = make_report({0.4, 0.7, 0.4, 0.6});
  const OutlierSet z = drop_indistinct(select_outliers(r, 0.25), r);
  EXPECT_EQ(z.members, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(z.threshold_rank, 2u);
}

TEST(Segregation, ClusterCenter) {
  std::vector<double> scores(10, 0.1);
  scores[3] = 0.9;
  scores[7] = 0.7;
  const AnomalyReport r = make_report(scores);
  EXPECT_EQ(cluster_center({3, 7}, r), 3u);
  EXPECT_EQ(cluster_center({5}, r), 5u);
  scores[7] = 0.9;
  EXPECT_EQ(cluster_center({7, 3}, make_report(scores)), 3u);
}

// Union-find oracle over the explicit overlap graph.
ClusterSet oracle_clusters(const std::vector<std::size_t>& members,
                           const FragmentGrid& g, const AnomalyReport& r,
                           int min_pts) {
  std::vector<std::size_t> parent(members.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (windows_overlap(g, members[a], members[b])) parent[find(a)] = find(b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < members.size(); ++a) {
    groups[find(a)].push_back(members[a]);
  }
  ClusterSet out;
  for (auto& [root, m] : groups) {
    if (static_cast<int>(m.size()) < min_pts) continue;
    std::sort(m.begin(), m.end());
    out.push_back({m, cluster_center(m, r)});
  }
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    if (a.members.size() != b.members.size()) {
      return a.members.size() > b.members.size();
    }
    return a.center < b.center;
  });
  return out;
}

TEST(Segregation, ClustersMatchUnionFindOracle) {
  const FragmentGrid g = grid_224();
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> scores(g.size());
    for (double& s : scores) s = std::uniform_real_distribution<double>()(gen);
    const AnomalyReport r = make_report(scores);
    const double c = std::uniform_real_distribution<double>(0.5, 0.95)(gen);
    const int min_pts = 1 + static_cast<int>(gen() % 6);
    OutlierSet z = select_outliers(r, c);
    const ClusterSet got = cluster_outliers(z, g, r, min_pts);
    const ClusterSet want = oracle_clusters(z.members, g, r, min_pts);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(got[i].members, want[i].members);
      ASSERT_EQ(got[i].center, want[i].center);
    }

    // Order of enumeration does not matter.
    std::shuffle(z.members.begin(), z.members.end(), gen);
    const ClusterSet shuffled = cluster_outliers(z, g, r, min_pts);
    ASSERT_EQ(shuffled.size(), got.size());
    std::set<std::size_t> seen;
    const std::set<std::size_t> pool(z.members.begin(), z.members.end());
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(shuffled[i].members, got[i].members);
      for (std::size_t m : got[i].members) {
        ASSERT_TRUE(pool.count(m));
        ASSERT_TRUE(seen.insert(m).second);
      }
    }
  }
}

TEST(Segregation, PatchBlockFormsOneCluster) {
  const FragmentGrid g = grid_224();
  // A 38x38 patch at (90,90) fully contains only 4 windows but touches 25.
  std::vector<std::size_t> inside, touching;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Window w = fragment_window(g, i);
    if (w.row0 >= 90 && w.col0 >= 90 && w.row0 + 20 <= 128 && w.col0 + 20 <= 128) {
      inside.push_back(i);
    }
    if (w.row0 < 128 && w.row0 + 20 > 90 && w.col0 < 128 && w.col0 + 20 > 90) {
      touching.push_back(i);
    }
  }
  EXPECT_EQ(inside.size(), 4u);
  EXPECT_EQ(touching.size(), 25u);

  std::vector<double> scores(g.size(), 0.1);
  for (std::size_t i : touching) scores[i] = 0.9;
  const AnomalyReport r = make_report(scores);
  const OutlierSet z = select_outliers(r, 1.0 - 25.5 / 441.0);
  ASSERT_EQ(z.members.size(), 25u);
  const ClusterSet cs = cluster_outliers(z, g, r, 20);
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_EQ(cs[0].members.size(), 25u);
}

TEST(Segregation, TwoDistantPatchesTwoClusters) {
  const FragmentGrid g = grid_224();
  std::vector<double> scores(g.size(), 0.1);
  auto mark = [&](int r0, int c0, double v) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Window w = fragment_window(g, i);
      if (w.row0 < r0 + 38 && w.row0 + 20 > r0 && w.col0 < c0 + 38 &&
          w.col0 + 20 > c0) {
        scores[i] = v;
      }
    }
  };
  mark(10, 10, 0.9);
  mark(150, 150, 0.8);
  const AnomalyReport r = make_report(scores);
  const ClusterSet cs =
      cluster_outliers(select_outliers(r, 1.0 - 50.5 / 441.0), g, r, 20);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_NE(cs[0].center, cs[1].center);
}

TEST(Segregation, SparseSingletonsDropped) {
  const FragmentGrid g = grid_224();
  OutlierSet z;
  for (std::size_t i = 0; i < g.size(); i += 44) z.members.push_back(i);
  z.threshold_rank = z.members.size();
  const AnomalyReport r = make_report(std::vector<double>(g.size(), 0.5));
  EXPECT_TRUE(cluster_outliers(z, g, r, 20).empty());
}

TEST(Segregation, ScoringIsDeterministic) {
  Image img(64, 64, 3);
  std::mt19937_64 gen(2);
  for (float& v : img.data()) v = std::uniform_real_distribution<float>()(gen);
  const FragmentGrid g = fragment_image(img, 16, 8);
  ValidatedConfig cfg;
  const AnomalyReport a = score_fragments(g, cfg, derive_stream(4, 0));
  const AnomalyReport b = score_fragments(g, cfg, derive_stream(4, 0));
  EXPECT_EQ(a.scores, b.scores);
  EXPECT_EQ(a.ranking, b.ranking);
  const AnomalyReport c = score_fragments(g, cfg, derive_stream(5, 0));
  EXPECT_NE(a.scores, c.scores);
}

}  // namespace
}  // namespace oddr
