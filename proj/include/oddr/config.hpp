// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace oddr {

// Raw, possibly partial hyper-parameters as read from a file or flags.
// Integers are held signed so that negative input is reported as a range
// violation rather than silently wrapping.
struct DefenseConfig {
  std::optional<std::int64_t> kernel;            // k
  std::optional<std::int64_t> stride;            // str
  std::optional<double> confidence;              // c
  std::optional<std::int64_t> mask_size;         // d
  std::optional<double> info_fraction;           // inf
  std::optional<std::int64_t> trees;             // T
  std::optional<double> subsample_fraction;      // subsample_frac
  std::optional<std::int64_t> min_pts;           // min_pts
  std::optional<std::uint64_t> seed;
};

// Every field present and inside its allowed range.
struct ValidatedConfig {
  int kernel = 20;
  int stride = 10;
  double confidence = 0.8;
  int mask_size = 50;
  double info_fraction = 0.8;
  int trees = 100;
  double subsample_fraction = 0.3;
  int min_pts = 20;
  std::uint64_t seed = 0;

  friend bool operator==(const ValidatedConfig&,
                         const ValidatedConfig&) = default;
};

struct Violation {
  std::string field;
  std::string value;
  std::string allowed;
};

// Carries every violated bound, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept {
    return violations_;
  }
  bool has_field(std::string_view field) const;

 private:
  std::vector<Violation> violations_;
};

ValidatedConfig validate_config(const DefenseConfig& cfg);
ValidatedConfig validate_config(const ValidatedConfig& cfg);
DefenseConfig to_defense_config(const ValidatedConfig& cfg);

// Image-dependent bounds: k <= min(H, W) and d <= min(H, W).
void check_fits_image(const ValidatedConfig& cfg, int height, int width);

// Flat `key = value` text with `#` comments. Unknown keys, duplicate keys
// and malformed values throw Error(kParse).
DefenseConfig parse_config(std::string_view text);
DefenseConfig load_config_file(const std::filesystem::path& path);
std::string format_config(const ValidatedConfig& cfg);

}  // namespace oddr
