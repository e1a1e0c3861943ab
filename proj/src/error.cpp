// SPDX-License-Identifier: Apache-2.0
#include "oddr/error.hpp"

namespace oddr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kKernelTooLarge: return "KernelTooLarge";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kSubsampleTooLarge: return "SubsampleTooLarge";
    case ErrorCode::kSubsampleTooSmall: return "SubsampleTooSmall";
    case ErrorCode::kMaskTooLarge: return "MaskTooLarge";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kZeroReferenceStd: return "ZeroReferenceStd";
    case ErrorCode::kPatchOutOfBounds: return "PatchOutOfBounds";
    case ErrorCode::kInvalidImage: return "InvalidImage";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace oddr
