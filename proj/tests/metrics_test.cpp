// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "oddr/error.hpp"
#include "oddr/metrics.hpp"

namespace oddr {
namespace {

DepthMap map2x2(std::vector<double> v) { return {2, 2, std::move(v)}; }

TEST(Metrics, WorkedExample) {
  const DepthMap d = map2x2({1, 1, 1, 1});
  const DepthMap adv = map2x2({1.2, 1, 1, 0.8});
  const FocusMask all{2, 2, {1, 1, 1, 1}};
  // 1.2 - 1 and 1 - 0.8 are not exactly 0.2 in binary floating point.
  EXPECT_NEAR(depth_error(d, adv, all), 0.1, 1e-12);
  EXPECT_EQ(affected_ratio(d, adv, all), 0.5);
  EXPECT_NEAR(depth_mse(d, adv), 0.02, 1e-12);
}

TEST(Metrics, EqualMapsAndBoundaries) {
  const DepthMap d = map2x2({0.3, 0.4, 0.5, 0.6});
  const FocusMask all{2, 2, {1, 1, 1, 1}};
  EXPECT_EQ(depth_error(d, d, all), 0.0);
  EXPECT_EQ(affected_ratio(d, d, all), 0.0);
  EXPECT_EQ(depth_mse(d, d), 0.0);

  // Offsets that are exactly 0.1 after subtraction: 0.5 - 0.4 etc. are not,
  // so use dyadic values where the difference is representable.
  const DepthMap base = map2x2({0.0, 0.0, 0.0, 0.0});
  const DepthMap tenth = map2x2({0.1, 0.1, 0.1, 0.1});
  EXPECT_EQ(affected_ratio(base, tenth, all), 0.0);
  EXPECT_NEAR(depth_mse(base, tenth), 0.01, 1e-15);

  EXPECT_THROW(depth_mse(d, DepthMap{1, 4, {0, 0, 0, 0}}), Error);
  EXPECT_THROW(depth_error(d, d, FocusMask{2, 2, {0, 0, 0, 0}}), Error);
}

TEST(Metrics, Recovery) {
  std::vector<OutcomeRecord> fail_all(5, {true, true, true});
  EXPECT_EQ(recovery_rate(fail_all), 0.0);
  std::vector<OutcomeRecord> r;
  for (int i = 0; i < 10; ++i) r.push_back({true, false, i < 6});
  r.push_back({false, false, true});  // clean-wrong: not an attack success
  r.push_back({true, true, false});
  EXPECT_DOUBLE_EQ(recovery_rate(r), 0.6);
}

TEST(Metrics, Overlap) {
  const MaskRegion a{87, 87, 50};
  EXPECT_EQ(localization_overlap(a, GroundTruth{a}), 1.0);
  EXPECT_EQ(localization_overlap(a, GroundTruth{{0, 0, 10}}), 0.0);
  EXPECT_DOUBLE_EQ(localization_overlap(a, GroundTruth{{90, 90, 38}}), 1444.0 / 2500.0);
}

// Independent loops used as the oracle.
struct Brute {
  static double ed(const DepthMap& d, const DepthMap& a, const FocusMask& m) {
    double num = 0, den = 0;
    for (int y = 0; y < d.height; ++y) {
      for (int x = 0; x < d.width; ++x) {
        const int i = y * d.width + x;
        num += std::fabs(d.values[i] - a.values[i]) * m.values[i];
        den += m.values[i];
      }
    }
    return num / den;
  }
  static double ra(const DepthMap& d, const DepthMap& a, const FocusMask& m) {
    int num = 0, den = 0;
    for (int y = 0; y < d.height; ++y) {
      for (int x = 0; x < d.width; ++x) {
        const int i = y * d.width + x;
        if (std::fabs(d.values[i] - a.values[i]) * m.values[i] > 0.1) ++num;
        den += m.values[i];
      }
    }
    return static_cast<double>(num) / den;
  }
  static double mse(const DepthMap& d, const DepthMap& a) {
    double s = 0;
    for (int y = 0; y < d.height; ++y) {
      for (int x = 0; x < d.width; ++x) {
        const int i = y * d.width + x;
        s += (a.values[i] - d.values[i]) * (a.values[i] - d.values[i]);
      }
    }
    return s / (d.height * d.width);
  }
  static double rr(const std::vector<OutcomeRecord>& r) {
    int succ = 0, rec = 0;
    for (const auto& o : r) {
      if (o.clean_correct && !o.adv_correct) {
        ++succ;
        if (o.defended_correct) ++rec;
      }
    }
    return succ == 0 ? 0.0 : static_cast<double>(rec) / succ;
  }
};

TEST(Metrics, RandomInstancesMatchBruteForce) {
  std::mt19937_64 gen(77);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    DepthMap d{8, 8, {}}, a{8, 8, {}};
    FocusMask m{8, 8, {}};
    for (int i = 0; i < 64; ++i) {
      d.values.push_back(u(gen));
      a.values.push_back(gen() % 3 ? d.values.back() + 0.3 * (u(gen) - 1.0) : d.values.back());
      m.values.push_back(gen() % 4 ? 1 : 0);
    }
    m.values[0] = 1;
    ASSERT_NEAR(depth_error(d, a, m), Brute::ed(d, a, m), 1e-12);
    ASSERT_NEAR(affected_ratio(d, a, m), Brute::ra(d, a, m), 1e-12);
    ASSERT_NEAR(depth_mse(d, a), Brute::mse(d, a), 1e-12);

    std::vector<OutcomeRecord> recs(1 + gen() % 50);
    for (auto& o : recs) o = {gen() % 2 == 0, gen() % 2 == 0, gen() % 2 == 0};
    const double rate = recovery_rate(recs);
    ASSERT_NEAR(rate, Brute::rr(recs), 1e-12);
    ASSERT_GE(rate, 0.0);
    ASSERT_LE(rate, 1.0);
    std::shuffle(recs.begin(), recs.end(), gen);
    ASSERT_EQ(recovery_rate(recs), rate);
  }
}

TEST(Metrics, Readers) {
  std::istringstream dm("2 3\n0.1 0.2 0.3\n0.4 0.5 0.6\n");
  const DepthMap d = read_depth_map(dm);
  EXPECT_EQ(d.height, 2);
  EXPECT_EQ(d.width, 3);
  EXPECT_DOUBLE_EQ(d.values[5], 0.6);
  std::istringstream short_map("2 2\n1 2 3\n");
  EXPECT_THROW(read_depth_map(short_map), Error);

  std::istringstream fm("1 3\n1 0 1\n");
  EXPECT_EQ(read_focus_mask(fm).values, (std::vector<std::uint8_t>{1, 0, 1}));
  std::istringstream bad_mask("1 1\n2\n");
  EXPECT_THROW(read_focus_mask(bad_mask), Error);

  std::istringstream csv("clean_correct,adv_correct,defended_correct\n1,0,1\n1,0,0\n");
  const auto recs = read_outcomes_csv(csv);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_DOUBLE_EQ(recovery_rate(recs), 0.5);
  std::istringstream bare("1,0,1\n");
  EXPECT_EQ(read_outcomes_csv(bare).size(), 1u);
  std::istringstream broken("1,0\n");
  EXPECT_THROW(read_outcomes_csv(broken), Error);
}

}  // namespace
}  // namespace oddr
