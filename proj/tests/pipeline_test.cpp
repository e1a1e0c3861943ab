// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oddr/error.hpp"
#include "oddr/pipeline.hpp"
#include "oddr/png_io.hpp"
#include "oddr/report.hpp"
#include "oddr/synth.hpp"

namespace oddr {
namespace {
namespace fs = std::filesystem;

fs::path tmp_dir() {
  const fs::path p = fs::path(ODDR_TEST_TMP) / "pipeline";
  fs::create_directories(p);
  return p;
}

Image noise_patched(std::uint64_t seed) {
  PatchSpec spec;
  spec.x0 = 90;
  spec.y0 = 90;
  return inject(gradient_background(224, 224, 3), spec, seed).first;
}

TEST(Pipeline, ConstantImageIsNotDetected) {
  const Image flat(224, 224, 3, 0.5f);
  const DefenseOutcome out = defend(flat, ValidatedConfig{});
  EXPECT_FALSE(out.detected());
  EXPECT_EQ(out.image, flat);
}

TEST(Pipeline, NoisePatchDetectedAndLocalityHolds) {
  const Image img = noise_patched(3);
  const DefenseOutcome out = defend(img, ValidatedConfig{});
  ASSERT_TRUE(out.detected());
  ASSERT_EQ(out.neutralized.size(), out.clusters.size());
  const auto a = img.to_bytes(), b = out.image.to_bytes();
  for (int r = 0; r < 224; ++r) {
    for (int c = 0; c < 224; ++c) {
      bool masked = false;
      for (const ClusterOutcome& co : out.neutralized) {
        const MaskRegion& m = co.mask;
        masked |= r >= m.row0 && r < m.row0 + m.size && c >= m.col0 &&
                  c < m.col0 + m.size;
      }
      if (masked) continue;
      for (int ch = 0; ch < 3; ++ch) {
        ASSERT_EQ(a[img.offset(r, c, ch)], b[img.offset(r, c, ch)]);
      }
    }
  }
}

TEST(Pipeline, Deterministic) {
  const Image img = noise_patched(4);
  ValidatedConfig cfg;
  cfg.seed = 12;
  const DefenseOutcome a = defend(img, cfg);
  const DefenseOutcome b = defend(img, cfg);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.report.scores, b.report.scores);
  EXPECT_EQ(a.outliers.members, b.outliers.members);
}

TEST(Pipeline, RejectsOversizedKernel) {
  ValidatedConfig cfg;
  EXPECT_THROW(defend(Image(30, 30, 3), cfg), ConfigError);
}

TEST(Pipeline, TinyImageSkipsDetection) {
  ValidatedConfig cfg;
  cfg.kernel = 4;
  cfg.stride = 4;
  cfg.mask_size = 4;
  const Image img(4, 4, 1, 0.3f);
  const DefenseOutcome out = defend(img, cfg);
  EXPECT_FALSE(out.detected());
  EXPECT_EQ(out.image, img);
}

TEST(Png, RoundTripBytes) {
  std::mt19937_64 gen(1);
  for (int c : {1, 3}) {
    std::vector<std::uint8_t> bytes(17 * 9 * c);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(gen());
    const Image img = Image::from_bytes(17, 9, c, bytes);
    const Image back = decode_png(encode_png(img));
    EXPECT_EQ(back.channels(), c);
    EXPECT_EQ(back.to_bytes(), bytes);

    const fs::path p = tmp_dir() / ("rt" + std::to_string(c) + ".png");
    write_png(p, img);
    EXPECT_EQ(read_png(p), back);
    EXPECT_FALSE(fs::exists(p.string() + ".partial"));
  }
}

TEST(Png, Errors) {
  EXPECT_THROW(decode_png({1, 2, 3, 4}), Error);
  EXPECT_THROW(read_png(tmp_dir() / "missing.png"), Error);
  EXPECT_THROW(write_png(tmp_dir() / "no_such_dir" / "x.png", Image(2, 2, 1)), Error);
}

TEST(Report, SchemaAndKeyOrder) {
  const Image img = noise_patched(5);
  const ValidatedConfig cfg;
  const DefenseOutcome out = defend(img, cfg);
  const Json r = make_defense_report("in.png", cfg, NeutralizationMode::kSvd, img,
                                     out, std::nullopt);
  for (const std::string& e : validate_defense_report(r)) ADD_FAILURE() << e;
  std::vector<std::string> keys;
  for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"input", "config", "mode", "image",
                                            "fragments", "outliers", "detected",
                                            "clusters", "elapsed"}));
  EXPECT_TRUE(r["elapsed"].is_null());
  EXPECT_EQ(r["fragments"], 441);
  EXPECT_EQ(r["detected"], out.detected());
  for (const auto& c : r["clusters"]) {
    for (const auto& ch : c["channels"]) EXPECT_GE(ch["preserved"].get<double>(), 0.8);
  }

  Json broken = r;
  broken["detected"] = !out.detected();
  EXPECT_FALSE(validate_defense_report(broken).empty());
  Json wrong_type = r;
  wrong_type["fragments"] = "many";
  EXPECT_FALSE(validate_defense_report(wrong_type).empty());
  Json missing = r;
  missing.erase("clusters");
  EXPECT_FALSE(validate_defense_report(missing).empty());

  const Json timed = make_defense_report("in.png", cfg, NeutralizationMode::kMean,
                                         img, defend(img, cfg, NeutralizationMode::kMean),
                                         0.25);
  EXPECT_TRUE(validate_defense_report(timed).empty());
  EXPECT_EQ(timed["elapsed"], 0.25);
}

}  // namespace
}  // namespace oddr
