// SPDX-License-Identifier: Apache-2.0
#include "oddr/synth.hpp"

#include <string>
#include <vector>

#include "oddr/error.hpp"

namespace oddr {

std::string_view to_string(PatchKind kind) {
  switch (kind) {
    case PatchKind::kNoise: return "noise";
    case PatchKind::kChecker: return "checker";
    case PatchKind::kMatched: return "matched";
  }
  return "noise";
}

std::optional<PatchKind> parse_patch_kind(std::string_view text) {
  if (text == "noise") return PatchKind::kNoise;
  if (text == "checker") return PatchKind::kChecker;
  if (text == "matched") return PatchKind::kMatched;
  return std::nullopt;
}

Image gradient_background(int height, int width, int channels) {
  Image image(height, width, channels);
  const double row_span = height > 1 ? height - 1.0 : 1.0;
  const double col_span = width > 1 ? width - 1.0 : 1.0;
  for (int r = 0; r < height; ++r) {
    const double u = r / row_span;
    for (int c = 0; c < width; ++c) {
      const double v = c / col_span;
      for (int ch = 0; ch < channels; ++ch) {
        double t = 0.0;
        switch (ch % 3) {
          case 0: t = 0.5 * (u + v); break;
          case 1: t = 0.5 * (u + 1.0 - v); break;
          default: t = 0.5 * (1.0 - u + v); break;
        }
        image.at(r, c, ch) = static_cast<float>(0.2 + 0.6 * t);
      }
    }
  }
  return image;
}

std::pair<Image, GroundTruth> inject(const Image& image, const PatchSpec& spec,
                                     RngStream& rng) {
  if (spec.size < 1 || spec.x0 < 0 || spec.y0 < 0 ||
      spec.x0 + spec.size > image.width() ||
      spec.y0 + spec.size > image.height()) {
    throw Error(ErrorCode::kPatchOutOfBounds,
                "patch " + std::to_string(spec.size) + " at (" +
                    std::to_string(spec.x0) + ", " + std::to_string(spec.y0) +
                    ") leaves the " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + " image");
  }

  Image out = image;
  const int channels = image.channels();
  switch (spec.kind) {
    case PatchKind::kNoise:
      for (int r = 0; r < spec.size; ++r) {
        for (int c = 0; c < spec.size; ++c) {
          for (int ch = 0; ch < channels; ++ch) {
            out.at(spec.y0 + r, spec.x0 + c, ch) =
                static_cast<float>(rng.uniform());
          }
        }
      }
      break;
    case PatchKind::kChecker:
      for (int r = 0; r < spec.size; ++r) {
        for (int c = 0; c < spec.size; ++c) {
          const float v = ((r / 2 + c / 2) % 2 == 0) ? 1.0f : 0.0f;
          for (int ch = 0; ch < channels; ++ch) {
            out.at(spec.y0 + r, spec.x0 + c, ch) = v;
          }
        }
      }
      break;
    case PatchKind::kMatched: {
      const std::size_t pixels =
          static_cast<std::size_t>(spec.size) * spec.size;
      for (int r = 0; r < spec.size; ++r) {
        for (int c = 0; c < spec.size; ++c) {
          const std::size_t pick = rng.below(pixels);
          const int sr = spec.y0 + static_cast<int>(pick / spec.size);
          const int sc = spec.x0 + static_cast<int>(pick % spec.size);
          for (int ch = 0; ch < channels; ++ch) {
            out.at(spec.y0 + r, spec.x0 + c, ch) = image.at(sr, sc, ch);
          }
        }
      }
      break;
    }
  }
  GroundTruth truth;
  truth.region = {spec.y0, spec.x0, spec.size};
  return {std::move(out), truth};
}

std::pair<Image, GroundTruth> inject(const Image& image, const PatchSpec& spec,
                                     std::uint64_t seed) {
  RngStream rng = derive_stream(seed, spec.stream_index);
  return inject(image, spec, rng);
}

std::string format_sidecar(const GroundTruth& truth) {
  return std::to_string(truth.region.col0) + " " +
         std::to_string(truth.region.row0) + " " +
         std::to_string(truth.region.size) + "\n";
}

GroundTruth parse_sidecar(std::istream& in) {
  int x0 = 0;
  int y0 = 0;
  int size = 0;
  if (!(in >> x0 >> y0 >> size) || x0 < 0 || y0 < 0 || size < 1) {
    throw Error(ErrorCode::kParse, "sidecar must hold `x0 y0 size`");
  }
  GroundTruth truth;
  truth.region = {y0, x0, size};
  return truth;
}

}  // namespace oddr
