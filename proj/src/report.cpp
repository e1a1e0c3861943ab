// SPDX-License-Identifier: Apache-2.0
#include "oddr/report.hpp"

#include <cstdint>

namespace oddr {

Json make_defense_report(const std::string& input, const ValidatedConfig& cfg,
                         NeutralizationMode mode, const Image& input_image,
                         const DefenseOutcome& outcome,
                         std::optional<double> elapsed_seconds) {
  Json report;
  report["input"] = input;
  report["config"] = {
      {"k", cfg.kernel},
      {"str", cfg.stride},
      {"c", cfg.confidence},
      {"d", cfg.mask_size},
      {"inf", cfg.info_fraction},
      {"trees", cfg.trees},
      {"subsample_frac", cfg.subsample_fraction},
      {"min_pts", cfg.min_pts},
      {"seed", cfg.seed},
  };
  report["mode"] = std::string(to_string(mode));
  report["image"] = {{"height", input_image.height()},
                     {"width", input_image.width()},
                     {"channels", input_image.channels()}};
  report["fragments"] = outcome.grid.size();
  report["outliers"] = outcome.outliers.members.size();
  report["detected"] = outcome.detected();

  Json clusters = Json::array();
  for (const ClusterOutcome& c : outcome.neutralized) {
    Json channels = Json::array();
    for (const ChannelOutcome& ch : c.channels) {
      if (mode == NeutralizationMode::kSvd) {
        channels.push_back({{"rank", ch.truncation.rank},
                            {"preserved", ch.truncation.preserved}});
      } else {
        channels.push_back({{"mean", ch.mean}});
      }
    }
    clusters.push_back({
        {"center_index", c.center},
        {"member_count", c.member_count},
        {"mask",
         {{"row0", c.mask.row0}, {"col0", c.mask.col0}, {"d", c.mask.size}}},
        {"channels", std::move(channels)},
    });
  }
  report["clusters"] = std::move(clusters);
  report["elapsed"] =
      elapsed_seconds ? Json(*elapsed_seconds) : Json(nullptr);
  return report;
}

namespace {

void require(std::vector<std::string>& errors, bool ok, std::string what) {
  if (!ok) errors.push_back(std::move(what));
}

bool is_count(const Json& j) {
  return j.is_number_unsigned() ||
         (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

std::vector<std::string> validate_report_unchecked(const Json& r) {
  std::vector<std::string> errors;
  if (!r.is_object()) return {"report is not an object"};

  const char* keys[] = {"input",    "config",  "mode",     "image",
                        "fragments", "outliers", "detected", "clusters",
                        "elapsed"};
  std::size_t i = 0;
  for (auto it = r.begin(); it != r.end(); ++it, ++i) {
    if (i >= std::size(keys) || it.key() != keys[i]) {
      errors.push_back("unexpected key order at '" + it.key() + "'");
      return errors;
    }
  }
  if (i != std::size(keys)) return {"missing top-level keys"};

  require(errors, r["input"].is_string(), "input must be a string");
  const Json& cfg = r["config"];
  require(errors, cfg.is_object() && cfg.size() == 9, "config needs 9 keys");
  for (const char* key : {"k", "str", "d", "trees", "min_pts", "seed"}) {
    require(errors, cfg.contains(key) && is_count(cfg[key]),
            std::string("config.") + key + " must be a non-negative integer");
  }
  for (const char* key : {"c", "inf", "subsample_frac"}) {
    require(errors, cfg.contains(key) && cfg[key].is_number(),
            std::string("config.") + key + " must be a number");
  }
  const bool svd = r["mode"] == "svd";
  require(errors, svd || r["mode"] == "mean", "mode must be svd or mean");
  for (const char* key : {"height", "width", "channels"}) {
    require(errors, r["image"].contains(key) && is_count(r["image"][key]),
            std::string("image.") + key + " must be a count");
  }
  require(errors, is_count(r["fragments"]), "fragments must be a count");
  require(errors, is_count(r["outliers"]), "outliers must be a count");
  require(errors, r["detected"].is_boolean(), "detected must be a boolean");
  require(errors, r["elapsed"].is_null() || r["elapsed"].is_number(),
          "elapsed must be a number or null");
  const Json& clusters = r["clusters"];
  require(errors, clusters.is_array(), "clusters must be an array");
  if (!errors.empty()) return errors;

  require(errors, r["detected"].get<bool>() == !clusters.empty(),
          "detected disagrees with clusters");
  const double inf = cfg["inf"].get<double>();
  const auto channels = r["image"]["channels"].get<std::size_t>();
  for (const Json& c : clusters) {
    require(errors,
            c.is_object() && is_count(c.value("center_index", Json())) &&
                is_count(c.value("member_count", Json())) &&
                c.contains("mask") && c.contains("channels"),
            "cluster entry malformed");
    if (!errors.empty()) return errors;
    const Json& mask = c["mask"];
    for (const char* key : {"row0", "col0", "d"}) {
      require(errors, mask.contains(key) && is_count(mask[key]),
              std::string("mask.") + key + " must be a count");
    }
    require(errors, c["channels"].is_array() && c["channels"].size() == channels,
            "one channel entry per image channel");
    if (!errors.empty()) return errors;
    for (const Json& ch : c["channels"]) {
      if (svd) {
        require(errors, is_count(ch.value("rank", Json())) &&
                            ch.value("rank", Json()).get<std::size_t>() >= 1,
                "rank must be >= 1");
        require(errors, ch.value("preserved", Json()).is_number() &&
                            ch["preserved"].get<double>() >= inf,
                "preserved must be >= inf");
      } else {
        require(errors, ch.value("mean", Json()).is_number(),
                "mean-mode channel needs a mean");
      }
    }
  }
  return errors;
}

}  // namespace

std::vector<std::string> validate_defense_report(const Json& report) {
  try {
    return validate_report_unchecked(report);
  } catch (const nlohmann::json::exception& e) {
    return {std::string("malformed report: ") + e.what()};
  }
}

}  // namespace oddr
