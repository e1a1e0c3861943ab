// SPDX-License-Identifier: Apache-2.0
#include "oddr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "oddr/error.hpp"

namespace oddr {
namespace {

void check_pair(const DepthMap& a, const DepthMap& b) {
  if (a.height != b.height || a.width != b.width ||
      a.values.size() != b.values.size() ||
      a.values.size() != static_cast<std::size_t>(a.height) * a.width) {
    throw Error(ErrorCode::kDimensionMismatch, "depth maps differ in shape");
  }
}

double mask_total(const DepthMap& d, const FocusMask& mask) {
  if (mask.height != d.height || mask.width != d.width ||
      mask.values.size() != d.values.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "focus mask does not match the depth maps");
  }
  double total = 0.0;
  for (auto m : mask.values) total += m != 0 ? 1.0 : 0.0;
  if (total == 0.0) throw Error(ErrorCode::kEmptyMask, "focus mask is empty");
  return total;
}

}  // namespace

double depth_error(const DepthMap& clean, const DepthMap& adv,
                   const FocusMask& mask) {
  check_pair(clean, adv);
  const double total = mask_total(clean, mask);
  double sum = 0.0;
  for (std::size_t i = 0; i < clean.values.size(); ++i) {
    if (mask.values[i] != 0) sum += std::abs(clean.values[i] - adv.values[i]);
  }
  return sum / total;
}

double affected_ratio(const DepthMap& clean, const DepthMap& adv,
                      const FocusMask& mask) {
  check_pair(clean, adv);
  const double total = mask_total(clean, mask);
  std::size_t affected = 0;
  for (std::size_t i = 0; i < clean.values.size(); ++i) {
    if (mask.values[i] != 0 &&
        std::abs(clean.values[i] - adv.values[i]) > kAffectedThreshold) {
      ++affected;
    }
  }
  return static_cast<double>(affected) / total;
}

double depth_mse(const DepthMap& clean, const DepthMap& adv) {
  check_pair(clean, adv);
  if (clean.values.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "depth maps are empty");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < clean.values.size(); ++i) {
    const double d = adv.values[i] - clean.values[i];
    sum += d * d;
  }
  return sum / static_cast<double>(clean.values.size());
}

double recovery_rate(std::span<const OutcomeRecord> records) {
  std::size_t attacked = 0;
  std::size_t recovered = 0;
  for (const auto& r : records) {
    if (r.clean_correct && !r.adv_correct) {
      ++attacked;
      if (r.defended_correct) ++recovered;
    }
  }
  if (attacked == 0) return 0.0;
  return static_cast<double>(recovered) / static_cast<double>(attacked);
}

double localization_overlap(const MaskRegion& detected,
                            const GroundTruth& truth) {
  const MaskRegion& t = truth.region;
  const long rows = std::max(0, std::min(detected.row0 + detected.size,
                                         t.row0 + t.size) -
                                    std::max(detected.row0, t.row0));
  const long cols = std::max(0, std::min(detected.col0 + detected.size,
                                         t.col0 + t.size) -
                                    std::max(detected.col0, t.col0));
  const double inter = static_cast<double>(rows * cols);
  const double uni = static_cast<double>(detected.size) * detected.size +
                     static_cast<double>(t.size) * t.size - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

namespace {

std::pair<int, int> read_header(std::istream& in) {
  int h = 0;
  int w = 0;
  if (!(in >> h >> w) || h <= 0 || w <= 0) {
    throw Error(ErrorCode::kParse, "expected a positive `H W` header");
  }
  return {h, w};
}

}  // namespace

DepthMap read_depth_map(std::istream& in) {
  DepthMap map;
  std::tie(map.height, map.width) = read_header(in);
  const std::size_t count = static_cast<std::size_t>(map.height) * map.width;
  map.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> map.values[i]) || !std::isfinite(map.values[i])) {
      throw Error(ErrorCode::kParse,
                  "depth value " + std::to_string(i) + " missing or invalid");
    }
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::kParse, "trailing data in depth map");
  return map;
}

FocusMask read_focus_mask(std::istream& in) {
  FocusMask mask;
  std::tie(mask.height, mask.width) = read_header(in);
  const std::size_t count = static_cast<std::size_t>(mask.height) * mask.width;
  mask.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    int v = -1;
    if (!(in >> v) || (v != 0 && v != 1)) {
      throw Error(ErrorCode::kParse,
                  "mask value " + std::to_string(i) + " must be 0 or 1");
    }
    mask.values[i] = static_cast<std::uint8_t>(v);
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorCode::kParse, "trailing data in mask");
  return mask;
}

std::vector<OutcomeRecord> read_outcomes_csv(std::istream& in) {
  std::vector<OutcomeRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.find("clean_correct") != std::string::npos) {
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    bool flags[3] = {};
    int column = 0;
    while (std::getline(cells, cell, ',')) {
      if (column >= 3 || (cell != "0" && cell != "1")) {
        throw Error(ErrorCode::kParse,
                    "line " + std::to_string(line_no) + ": expected 0/1 cells");
      }
      flags[column++] = cell == "1";
    }
    if (column != 3) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected 3 cells");
    }
    records.push_back({flags[0], flags[1], flags[2]});
  }
  return records;
}

}  // namespace oddr
