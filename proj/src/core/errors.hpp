// Copyright 2026 The mvpl Authors
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

namespace mvpl {

enum class ErrorCode {
  InvalidInput,
  InvalidData,
  InsufficientSamples,
  NotSymmetric,
  NotPositiveSemiDefinite,
  DimensionMismatch,
  NumericalFailure,
  IncompleteReference,
  NoClasses,
  UnknownClass,
  DuplicateItem,
  CoverageMismatch,
  DegenerateTrainingSet,
  TrainingDiverged,
  EmptyTrainingSet,
  InvalidSplit,
  InvalidConfig,
  UnrecognizedFormat,
  CorruptFile,
  IoFailure,
};

const char* error_code_name(ErrorCode code);

/// True for errors raised while validating configuration or input files.
/// The CLI maps these to exit code 2; everything else exits 1.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const noexcept { return code_; }

  /// The message without the code-name prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace mvpl
