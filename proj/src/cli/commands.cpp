// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "oddr/config.hpp"
#include "oddr/diagnostics.hpp"
#include "oddr/error.hpp"
#include "oddr/metrics.hpp"
#include "oddr/pipeline.hpp"
#include "oddr/png_io.hpp"
#include "oddr/report.hpp"
#include "oddr/synth.hpp"

namespace oddr::cli {
namespace fs = std::filesystem;

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::uint8_t> to_bytes(const std::string& text) {
  return {text.begin(), text.end()};
}

// Thrown inside a command to leave with a specific exit status.
struct Exit {
  int code;
};

[[noreturn]] void fail(std::ostream& err, int code, const std::string& what) {
  err << "error: " << what << '\n';
  throw Exit{code};
}

ValidatedConfig load_config(const std::string& path,
                            std::optional<std::uint64_t> seed,
                            std::ostream& err) {
  try {
    DefenseConfig raw = path.empty() ? DefenseConfig{} : load_config_file(path);
    if (seed) raw.seed = *seed;
    return validate_config(raw);
  } catch (const ConfigError& e) {
    fail(err, kExitUsage, e.what());
  } catch (const Error& e) {
    fail(err, kExitUsage, e.what());
  }
}

Image load_image(const std::string& path, std::ostream& err) {
  try {
    return read_png(path);
  } catch (const Error& e) {
    fail(err, kExitImage, e.what());
  }
}

void save_image(const std::string& path, const Image& image,
                std::ostream& err) {
  try {
    write_png(path, image);
  } catch (const Error& e) {
    fail(err, kExitImage, e.what());
  }
}

void save_text(const std::string& path, const std::string& text,
               std::ostream& err) {
  try {
    write_file_atomic(path, to_bytes(text));
  } catch (const Error& e) {
    fail(err, kExitUsage, e.what());
  }
}

NeutralizationMode mode_or_fail(const std::string& text, std::ostream& err) {
  const auto mode = parse_mode(text);
  if (!mode) fail(err, kExitUsage, "--mode must be svd or mean");
  return *mode;
}

GroundTruth load_sidecar(const fs::path& path, std::ostream& err) {
  std::ifstream in(path);
  if (!in) fail(err, kExitUsage, "cannot open sidecar " + path.string());
  try {
    return parse_sidecar(in);
  } catch (const Error& e) {
    fail(err, kExitUsage, e.what());
  }
}

fs::path sidecar_path(const fs::path& image_path) {
  fs::path p = image_path;
  p += ".gt";
  return p;
}

struct DefendResult {
  DefenseOutcome outcome;
  double elapsed = 0.0;
};

DefendResult run_defense(const Image& image, const ValidatedConfig& cfg,
                         NeutralizationMode mode, std::ostream& err) {
  try {
    check_fits_image(cfg, image.height(), image.width());
  } catch (const ConfigError& e) {
    fail(err, kExitUsage, e.what());
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    DefendResult r;
    r.outcome = defend(image, cfg, mode);
    r.elapsed = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    return r;
  } catch (const Error& e) {
    fail(err, e.code() == ErrorCode::kNonFinite ? kExitNumeric : kExitUsage,
         e.what());
  }
}

// ---------------------------------------------------------------- defend

struct DefendArgs {
  std::string input;
  std::string output;
  std::string config;
  std::string report;
  std::optional<std::uint64_t> seed;
  std::string mode = "svd";
  bool reproducible = false;
};

int cmd_defend(const DefendArgs& a, std::ostream& out, std::ostream& err) {
  const ValidatedConfig cfg = load_config(a.config, a.seed, err);
  const NeutralizationMode mode = mode_or_fail(a.mode, err);
  const Image image = load_image(a.input, err);
  const DefendResult r = run_defense(image, cfg, mode, err);

  const Json report = make_defense_report(
      a.input, cfg, mode, image, r.outcome,
      a.reproducible ? std::nullopt : std::optional<double>(r.elapsed));
  save_image(a.output, r.outcome.image, err);
  const std::string text = report.dump(2) + "\n";
  if (a.report.empty()) {
    out << text;
  } else {
    save_text(a.report, text, err);
  }
  err << "elapsed_seconds " << fixed6(r.elapsed) << " detected "
      << (r.outcome.detected() ? "true" : "false") << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- inject

struct InjectArgs {
  std::string input;
  std::string output;
  std::string kind = "noise";
  int size = 38;
  int x = 0;
  int y = 0;
  std::uint64_t seed = 0;
  int height = 224;
  int width = 224;
  int channels = 3;
};

int cmd_inject(const InjectArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = parse_patch_kind(a.kind);
  if (!kind) fail(err, kExitUsage, "--kind must be noise, checker or matched");
  Image host;
  if (a.input.empty()) {
    try {
      host = gradient_background(a.height, a.width, a.channels);
    } catch (const Error& e) {
      fail(err, kExitUsage, e.what());
    }
  } else {
    host = load_image(a.input, err);
  }

  PatchSpec spec;
  spec.kind = *kind;
  spec.x0 = a.x;
  spec.y0 = a.y;
  spec.size = a.size;
  std::pair<Image, GroundTruth> injected;
  try {
    injected = inject(host, spec, a.seed);
  } catch (const Error& e) {
    fail(err, kExitUsage, e.what());
  }
  save_image(a.output, injected.first, err);
  save_text(sidecar_path(a.output).string(), format_sidecar(injected.second),
            err);
  out << "wrote " << a.output << " and " << sidecar_path(a.output).string()
      << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- diagnose

struct DiagnoseArgs {
  std::string input;
  std::string config;
  std::string csv;
  std::string truth;
};

int cmd_diagnose(const DiagnoseArgs& a, std::ostream& out, std::ostream& err) {
  const ValidatedConfig cfg = load_config(a.config, std::nullopt, err);
  const Image image = load_image(a.input, err);
  FragmentGrid grid;
  try {
    grid = fragment_image(image, cfg.kernel, cfg.stride);
  } catch (const Error& e) {
    fail(err, kExitUsage, e.what());
  }
  if (grid.size() < 2) fail(err, kExitUsage, "need at least two fragments");
  const DistributionFit fit = fit_fragment_distribution(grid);
  const MahalanobisProfile profile = mahalanobis_profile(fit, grid);

  std::ostringstream csv;
  write_profile_csv(csv, profile, grid);
  save_text(a.csv, csv.str(), err);

  const fs::path truth_path =
      a.truth.empty() ? sidecar_path(a.input) : fs::path(a.truth);
  if (!a.truth.empty() || fs::exists(truth_path)) {
    const GroundTruth truth = load_sidecar(truth_path, err);
    out << "separation_gap " << fixed6(separation_gap(profile, grid,
                                                      truth.region))
        << '\n';
  }
  out << "fragments " << grid.size() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- metrics

struct DepthArgs {
  std::string clean;
  std::string adv;
  std::string mask;
};

template <typename T, typename Reader>
T read_with(const std::string& path, Reader reader, std::ostream& err) {
  std::ifstream in(path);
  if (!in) fail(err, kExitUsage, "cannot open " + path);
  try {
    return reader(in);
  } catch (const Error& e) {
    fail(err, kExitUsage, path + ": " + e.what());
  }
}

int cmd_depth_metrics(const DepthArgs& a, std::ostream& out,
                      std::ostream& err) {
  const auto clean = read_with<DepthMap>(a.clean, read_depth_map, err);
  const auto adv = read_with<DepthMap>(a.adv, read_depth_map, err);
  const auto mask = read_with<FocusMask>(a.mask, read_focus_mask, err);
  try {
    out << fixed6(depth_error(clean, adv, mask)) << ' '
        << fixed6(affected_ratio(clean, adv, mask)) << ' '
        << fixed6(depth_mse(clean, adv)) << '\n';
  } catch (const Error& e) {
    fail(err, kExitUsage, e.what());
  }
  return kExitOk;
}

int cmd_recovery(const std::string& path, std::ostream& out,
                 std::ostream& err) {
  const auto records =
      read_with<std::vector<OutcomeRecord>>(path, read_outcomes_csv, err);
  out << fixed6(recovery_rate(records)) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string dir;
  std::string config;
  std::string csv;
  std::string mode = "svd";
  std::optional<std::uint64_t> seed;
};

struct EvalRow {
  std::string file;
  bool ok = false;
  bool detected = false;
  std::size_t clusters = 0;
  std::optional<double> iou;
  double elapsed = 0.0;
  std::string error;
};

unsigned eval_threads() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ODDR_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const ValidatedConfig cfg = load_config(a.config, a.seed, err);
  const NeutralizationMode mode = mode_or_fail(a.mode, err);
  if (!fs::is_directory(a.dir)) fail(err, kExitUsage, a.dir + " is not a directory");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(a.dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  std::vector<EvalRow> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      EvalRow& row = rows[i];
      row.file = files[i].filename().string();
      std::ostringstream sink;
      try {
        const Image image = load_image(files[i].string(), sink);
        const DefendResult r = run_defense(image, cfg, mode, sink);
        row.ok = true;
        row.detected = r.outcome.detected();
        row.clusters = r.outcome.clusters.size();
        row.elapsed = r.elapsed;
        const fs::path gt = sidecar_path(files[i]);
        if (row.detected && fs::exists(gt)) {
          row.iou = localization_overlap(r.outcome.neutralized.front().mask,
                                         load_sidecar(gt, sink));
        }
      } catch (const Exit&) {
        row.error = sink.str();
      }
    }
  };
  const unsigned threads =
      std::min<unsigned>(eval_threads(), std::max<std::size_t>(files.size(), 1));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::ostringstream csv;
  csv << "file,detected,clusters,iou,elapsed\n";
  std::size_t processed = 0;
  std::size_t detected = 0;
  std::size_t iou_count = 0;
  double iou_sum = 0.0;
  double elapsed_sum = 0.0;
  for (const EvalRow& row : rows) {
    if (!row.ok) {
      err << "skipped " << row.file << ": " << row.error;
      continue;
    }
    ++processed;
    detected += row.detected ? 1 : 0;
    elapsed_sum += row.elapsed;
    if (row.iou) {
      iou_sum += *row.iou;
      ++iou_count;
    }
    csv << row.file << ',' << (row.detected ? 1 : 0) << ',' << row.clusters
        << ',' << (row.iou ? fixed6(*row.iou) : std::string()) << ','
        << fixed6(row.elapsed) << '\n';
  }
  const fs::path csv_path =
      a.csv.empty() ? fs::path(a.dir) / "eval.csv" : fs::path(a.csv);
  save_text(csv_path.string(), csv.str(), err);

  const double n = processed == 0 ? 1.0 : static_cast<double>(processed);
  out << "samples " << processed << '\n'
      << "detection_rate " << fixed6(detected / n) << '\n'
      << "mean_iou "
      << fixed6(iou_count == 0 ? 0.0 : iou_sum / static_cast<double>(iou_count))
      << '\n'
      << "mean_elapsed " << fixed6(elapsed_sum / n) << '\n';
  return processed == rows.size() ? kExitOk : kExitImage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Adversarial patch detection and neutralization"};
  app.name("oddr");
  app.require_subcommand(1);

  DefendArgs defend_args;
  auto* defend_cmd = app.add_subcommand("defend", "Detect and neutralize patches");
  defend_cmd->add_option("-i,--input", defend_args.input, "Input PNG")->required();
  defend_cmd->add_option("-o,--output", defend_args.output, "Defended PNG")->required();
  defend_cmd->add_option("--config", defend_args.config, "key = value config file");
  defend_cmd->add_option("--report", defend_args.report,
                         "JSON report path (stdout when omitted)");
  defend_cmd->add_option("--seed", defend_args.seed, "Overrides the config seed");
  defend_cmd->add_option("--mode", defend_args.mode, "svd or mean");
  defend_cmd->add_flag("--reproducible", defend_args.reproducible,
                       "Write elapsed as null so reports are byte-stable");

  InjectArgs inject_args;
  auto* inject_cmd = app.add_subcommand("inject", "Inject a synthetic patch");
  inject_cmd->add_option("-i,--input", inject_args.input,
                         "Host PNG (gradient background when omitted)");
  inject_cmd->add_option("-o,--output", inject_args.output, "Output PNG")->required();
  inject_cmd->add_option("--kind", inject_args.kind, "noise, checker or matched");
  inject_cmd->add_option("--size", inject_args.size, "Patch side in pixels");
  inject_cmd->add_option("--x", inject_args.x, "Left column")->required();
  inject_cmd->add_option("--y", inject_args.y, "Top row")->required();
  inject_cmd->add_option("--seed", inject_args.seed, "Random seed");
  inject_cmd->add_option("--height", inject_args.height, "Background height");
  inject_cmd->add_option("--width", inject_args.width, "Background width");
  inject_cmd->add_option("--channels", inject_args.channels, "Background channels");

  DiagnoseArgs diagnose_args;
  auto* diagnose_cmd =
      app.add_subcommand("diagnose", "Export per-fragment Mahalanobis distances");
  diagnose_cmd->add_option("-i,--input", diagnose_args.input, "Input PNG")->required();
  diagnose_cmd->add_option("--config", diagnose_args.config, "Config file");
  diagnose_cmd->add_option("-o,--output", diagnose_args.csv, "CSV path")->required();
  diagnose_cmd->add_option("--truth", diagnose_args.truth,
                           "Ground-truth sidecar (defaults to <input>.gt)");

  DepthArgs depth_args;
  auto* depth_cmd =
      app.add_subcommand("depth-metrics", "Print E_d R_a MSE for two depth maps");
  depth_cmd->add_option("--clean", depth_args.clean, "Clean depth map")->required();
  depth_cmd->add_option("--adv", depth_args.adv, "Attacked depth map")->required();
  depth_cmd->add_option("--mask", depth_args.mask, "Focus mask")->required();

  std::string outcomes;
  auto* recovery_cmd =
      app.add_subcommand("recovery", "Print the recovery rate of outcome records");
  recovery_cmd->add_option("--outcomes", outcomes, "Outcome CSV")->required();

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Defend every PNG in a directory");
  eval_cmd->add_option("--dir", eval_args.dir, "Corpus directory")->required();
  eval_cmd->add_option("--config", eval_args.config, "Config file");
  eval_cmd->add_option("--csv", eval_args.csv,
                       "Per-sample CSV (defaults to <dir>/eval.csv)");
  eval_cmd->add_option("--mode", eval_args.mode, "svd or mean");
  eval_cmd->add_option("--seed", eval_args.seed, "Overrides the config seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*defend_cmd) return cmd_defend(defend_args, out, err);
    if (*inject_cmd) return cmd_inject(inject_args, out, err);
    if (*diagnose_cmd) return cmd_diagnose(diagnose_args, out, err);
    if (*depth_cmd) return cmd_depth_metrics(depth_args, out, err);
    if (*recovery_cmd) return cmd_recovery(outcomes, out, err);
    if (*eval_cmd) return cmd_eval(eval_args, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::kNonFinite ? kExitNumeric : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace oddr::cli
