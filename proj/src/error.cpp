// Copyright 2026 The lvpbench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lvp/error.hpp"

#include <fmt/format.h>

namespace lvp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kBoundsError: return "BoundsError";
    case ErrorCode::kMaskMismatch: return "MaskMismatch";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kImageTooSmall: return "ImageTooSmall";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kWrongChannelCount: return "WrongChannelCount";
    case ErrorCode::kNonBinaryMask: return "NonBinaryMask";
    case ErrorCode::kMissingPrediction: return "MissingPrediction";
    case ErrorCode::kFormatError: return "FormatError";
    case ErrorCode::kNonFiniteDepth: return "NonFiniteDepth";
    case ErrorCode::kSubsetMismatch: return "SubsetMismatch";
    case ErrorCode::kEmptyCalibration: return "EmptyCalibration";
    case ErrorCode::kNoBoundary: return "NoBoundary";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kTagMissing: return "TagMissing";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int exit_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingPrediction:
    case ErrorCode::kIoError:
      return 3;
    default:
      return 2;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(fmt::format("{}: {}", error_code_name(code), message)),
      code_(code) {}

namespace {

std::string describe_missing(const std::vector<std::string>& ids) {
  constexpr std::size_t kShown = 10;
  std::string listed;
  for (std::size_t i = 0; i < ids.size() && i < kShown; ++i) {
    if (i) listed += ", ";
    listed += ids[i];
  }
  if (ids.size() > kShown) listed += fmt::format(", ... ({} more)", ids.size() - kShown);
  return fmt::format("{} sample(s) without prediction: {}", ids.size(), listed);
}

}  // namespace

MissingPredictionError::MissingPredictionError(std::vector<std::string> ids)
    : Error(ErrorCode::kMissingPrediction, describe_missing(ids)), ids_(std::move(ids)) {}

}  // namespace lvp
