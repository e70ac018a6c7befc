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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lvp {

enum class ErrorCode {
  kSchemaError,
  kBoundsError,
  kMaskMismatch,
  kDuplicateId,
  kImageTooSmall,
  kNonFiniteInput,
  kWrongChannelCount,
  kNonBinaryMask,
  kMissingPrediction,
  kFormatError,
  kNonFiniteDepth,
  kSubsetMismatch,
  kEmptyCalibration,
  kNoBoundary,
  kDimMismatch,
  kTagMissing,
  kIoError,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Process exit status for an error class: 2 validation, 3 missing data.
int exit_status(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when one or more samples have no prediction in a store. Every
// offending id is carried, in manifest order.
class MissingPredictionError : public Error {
 public:
  explicit MissingPredictionError(std::vector<std::string> ids);

  const std::vector<std::string>& ids() const noexcept { return ids_; }

 private:
  std::vector<std::string> ids_;
};

}  // namespace lvp
