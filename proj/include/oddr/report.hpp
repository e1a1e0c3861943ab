// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oddr/config.hpp"
#include "oddr/neutralization.hpp"
#include "oddr/pipeline.hpp"

namespace oddr {

using Json = nlohmann::ordered_json;

// Single JSON object with a fixed key order:
//   input, config{k,str,c,d,inf,trees,subsample_frac,min_pts,seed}, mode,
//   image{height,width,channels}, fragments, outliers, detected,
//   clusters[{center_index, member_count, mask{row0,col0,d},
//             channels[{rank, preserved} | {mean}]}],
//   elapsed (seconds, or null when timing is suppressed)
Json make_defense_report(const std::string& input, const ValidatedConfig& cfg,
                         NeutralizationMode mode, const Image& input_image,
                         const DefenseOutcome& outcome,
                         std::optional<double> elapsed_seconds);

// Empty when the report satisfies the schema and its invariants
// (detected == !clusters.empty(), preserved >= inf).
std::vector<std::string> validate_defense_report(const Json& report);

}  // namespace oddr
