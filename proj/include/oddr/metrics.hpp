// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <vector>

#include "oddr/neutralization.hpp"
#include "oddr/synth.hpp"

namespace oddr {

struct DepthMap {
  int height = 0;
  int width = 0;
  std::vector<double> values;
};

struct FocusMask {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> values;  // 0 / 1
};

struct OutcomeRecord {
  bool clean_correct = false;
  bool adv_correct = false;
  bool defended_correct = false;
};

inline constexpr double kAffectedThreshold = 0.1;

// sum(|d - d_adv| * M) / sum(M)
double depth_error(const DepthMap& clean, const DepthMap& adv,
                   const FocusMask& mask);
// sum(1[|d - d_adv| * M > 0.1]) / sum(M)
double affected_ratio(const DepthMap& clean, const DepthMap& adv,
                      const FocusMask& mask);
// mean (d_adv - d)^2 over every pixel
double depth_mse(const DepthMap& clean, const DepthMap& adv);

// Attacks count as successful only when they flip a clean-correct output.
// Zero when there are no successful attacks.
double recovery_rate(std::span<const OutcomeRecord> records);

// Rectangle IoU in pixels.
double localization_overlap(const MaskRegion& detected,
                            const GroundTruth& truth);

// `H W` header, then H*W whitespace-separated values.
DepthMap read_depth_map(std::istream& in);
FocusMask read_focus_mask(std::istream& in);
// CSV `clean_correct,adv_correct,defended_correct` with 0/1 cells; a header
// line is optional.
std::vector<OutcomeRecord> read_outcomes_csv(std::istream& in);

}  // namespace oddr
