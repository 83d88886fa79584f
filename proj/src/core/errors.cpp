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

#include "core/errors.hpp"

namespace mvpl {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::InvalidData: return "InvalidData";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveSemiDefinite: return "NotPositiveSemiDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::IncompleteReference: return "IncompleteReference";
    case ErrorCode::NoClasses: return "NoClasses";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::DuplicateItem: return "DuplicateItem";
    case ErrorCode::CoverageMismatch: return "CoverageMismatch";
    case ErrorCode::DegenerateTrainingSet: return "DegenerateTrainingSet";
    case ErrorCode::TrainingDiverged: return "TrainingDiverged";
    case ErrorCode::EmptyTrainingSet: return "EmptyTrainingSet";
    case ErrorCode::InvalidSplit: return "InvalidSplit";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnrecognizedFormat: return "UnrecognizedFormat";
    case ErrorCode::CorruptFile: return "CorruptFile";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "UnknownError";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidData:
    case ErrorCode::InsufficientSamples:
    case ErrorCode::IncompleteReference:
    case ErrorCode::NoClasses:
    case ErrorCode::UnknownClass:
    case ErrorCode::DuplicateItem:
    case ErrorCode::CoverageMismatch:
    case ErrorCode::InvalidSplit:
    case ErrorCode::InvalidConfig:
    case ErrorCode::UnrecognizedFormat:
    case ErrorCode::CorruptFile:
      return true;
    default:
      return false;
  }
}

}  // namespace mvpl
