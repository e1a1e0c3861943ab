// SPDX-License-Identifier: Apache-2.0
#include "oddr/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "oddr/error.hpp"

namespace oddr {
namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string text = "invalid configuration:";
  for (const auto& v : violations) {
    text += " OutOfRange(" + v.field + "=" + v.value + ", allowed " +
            v.allowed + ");";
  }
  return text;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, int line) {
  throw Error(ErrorCode::kParse, "line " + std::to_string(line) +
                                     ": bad value for '" + std::string(key) +
                                     "'");
}

template <typename T>
T parse_number(std::string_view key, std::string_view text, int line) {
  if constexpr (std::is_floating_point_v<T>) {
    const std::string copy(text);
    char* stop = nullptr;
    const double value = std::strtod(copy.c_str(), &stop);
    if (copy.empty() || stop != copy.c_str() + copy.size()) {
      bad_value(key, line);
    }
    return value;
  } else {
    T value{};
    const char* end = text.data() + text.size();
    const auto result = std::from_chars(text.data(), end, value);
    if (result.ec != std::errc() || result.ptr != end) bad_value(key, line);
    return value;
  }
}

}  // namespace

ConfigError::ConfigError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)),
      violations_(std::move(violations)) {}

bool ConfigError::has_field(std::string_view field) const {
  for (const auto& v : violations_) {
    if (v.field == field) return true;
  }
  return false;
}

ValidatedConfig validate_config(const DefenseConfig& cfg) {
  const ValidatedConfig defaults;
  std::vector<Violation> violations;

  const std::int64_t kernel = cfg.kernel.value_or(defaults.kernel);
  const std::int64_t stride = cfg.stride.value_or(defaults.stride);
  const double confidence = cfg.confidence.value_or(defaults.confidence);
  const std::int64_t mask_size = cfg.mask_size.value_or(defaults.mask_size);
  const double info = cfg.info_fraction.value_or(defaults.info_fraction);
  const std::int64_t trees = cfg.trees.value_or(defaults.trees);
  const double frac =
      cfg.subsample_fraction.value_or(defaults.subsample_fraction);
  const std::int64_t min_pts = cfg.min_pts.value_or(defaults.min_pts);

  constexpr std::int64_t kIntMax = 1 << 30;
  if (kernel < 1 || kernel > kIntMax) {
    violations.push_back({"k", std::to_string(kernel), "[1, 2^30]"});
  }
  if (stride < 1 || stride > kernel || stride > kIntMax) {
    violations.push_back({"str", std::to_string(stride), "[1, k]"});
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    violations.push_back({"c", format_double(confidence), "(0, 1)"});
  }
  if (mask_size < 1 || mask_size > kIntMax) {
    violations.push_back({"d", std::to_string(mask_size), "[1, 2^30]"});
  }
  if (!(info > 0.0 && info <= 1.0)) {
    violations.push_back({"inf", format_double(info), "(0, 1]"});
  }
  if (trees < 1 || trees > kIntMax) {
    violations.push_back({"trees", std::to_string(trees), "[1, 2^30]"});
  }
  if (!(frac > 0.0 && frac <= 1.0)) {
    violations.push_back({"subsample_frac", format_double(frac), "(0, 1]"});
  }
  if (min_pts < 1 || min_pts > kIntMax) {
    violations.push_back({"min_pts", std::to_string(min_pts), "[1, 2^30]"});
  }
  if (!violations.empty()) throw ConfigError(std::move(violations));

  ValidatedConfig out;
  out.kernel = static_cast<int>(kernel);
  out.stride = static_cast<int>(stride);
  out.confidence = confidence;
  out.mask_size = static_cast<int>(mask_size);
  out.info_fraction = info;
  out.trees = static_cast<int>(trees);
  out.subsample_fraction = frac;
  out.min_pts = static_cast<int>(min_pts);
  out.seed = cfg.seed.value_or(defaults.seed);
  return out;
}

DefenseConfig to_defense_config(const ValidatedConfig& cfg) {
  DefenseConfig out;
  out.kernel = cfg.kernel;
  out.stride = cfg.stride;
  out.confidence = cfg.confidence;
  out.mask_size = cfg.mask_size;
  out.info_fraction = cfg.info_fraction;
  out.trees = cfg.trees;
  out.subsample_fraction = cfg.subsample_fraction;
  out.min_pts = cfg.min_pts;
  out.seed = cfg.seed;
  return out;
}

ValidatedConfig validate_config(const ValidatedConfig& cfg) {
  return validate_config(to_defense_config(cfg));
}

void check_fits_image(const ValidatedConfig& cfg, int height, int width) {
  const int side = std::min(height, width);
  std::vector<Violation> violations;
  if (cfg.kernel > side) {
    violations.push_back(
        {"k", std::to_string(cfg.kernel), "[1, " + std::to_string(side) + "]"});
  }
  if (cfg.mask_size > side) {
    violations.push_back({"d", std::to_string(cfg.mask_size),
                          "[1, " + std::to_string(side) + "]"});
  }
  if (!violations.empty()) throw ConfigError(std::move(violations));
}

DefenseConfig parse_config(std::string_view text) {
  DefenseConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{}
                                             : text.substr(newline + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.emplace(key).second) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": duplicate key '" +
                                         std::string(key) + "'");
    }

    if (key == "k") {
      cfg.kernel = parse_number<std::int64_t>(key, value, line_no);
    } else if (key == "str") {
      cfg.stride = parse_number<std::int64_t>(key, value, line_no);
    } else if (key == "c") {
      cfg.confidence = parse_number<double>(key, value, line_no);
    } else if (key == "d") {
      cfg.mask_size = parse_number<std::int64_t>(key, value, line_no);
    } else if (key == "inf") {
      cfg.info_fraction = parse_number<double>(key, value, line_no);
    } else if (key == "trees") {
      cfg.trees = parse_number<std::int64_t>(key, value, line_no);
    } else if (key == "subsample_frac") {
      cfg.subsample_fraction = parse_number<double>(key, value, line_no);
    } else if (key == "min_pts") {
      cfg.min_pts = parse_number<std::int64_t>(key, value, line_no);
    } else if (key == "seed") {
      cfg.seed = parse_number<std::uint64_t>(key, value, line_no);
    } else {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": unknown key '" + std::string(key) +
                                         "'");
    }
  }
  return cfg;
}

DefenseConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string format_config(const ValidatedConfig& cfg) {
  std::ostringstream out;
  out << "k = " << cfg.kernel << '\n'
      << "str = " << cfg.stride << '\n'
      << "c = " << format_double(cfg.confidence) << '\n'
      << "d = " << cfg.mask_size << '\n'
      << "inf = " << format_double(cfg.info_fraction) << '\n'
      << "trees = " << cfg.trees << '\n'
      << "subsample_frac = " << format_double(cfg.subsample_fraction) << '\n'
      << "min_pts = " << cfg.min_pts << '\n'
      << "seed = " << cfg.seed << '\n';
  return out.str();
}

}  // namespace oddr
