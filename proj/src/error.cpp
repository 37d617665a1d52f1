// Copyright 2026 The Linerguide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "linerguide/error.hpp"

namespace linerguide {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidFrame: return "InvalidFrame";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kDegenerateContour: return "DegenerateContour";
    case ErrorCode::kHeightZero: return "HeightZero";
    case ErrorCode::kDegenerateAngle: return "DegenerateAngle";
    case ErrorCode::kZeroLengthSegment: return "ZeroLengthSegment";
    case ErrorCode::kSelfIntersection: return "SelfIntersection";
    case ErrorCode::kMergeSelfIntersection: return "MergeSelfIntersection";
    case ErrorCode::kInvalidMergeInput: return "InvalidMergeInput";
    case ErrorCode::kNoCrossPoint: return "NoCrossPoint";
    case ErrorCode::kIncompleteRules: return "IncompleteRules";
    case ErrorCode::kUnknownStyle: return "UnknownStyle";
    case ErrorCode::kBadConfig: return "BadConfig";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kNothingToFreeze: return "NothingToFreeze";
    case ErrorCode::kUnknownSession: return "UnknownSession";
  }
  return "Unknown";
}

bool is_detection_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateContour:
    case ErrorCode::kHeightZero:
    case ErrorCode::kDegenerateAngle:
    case ErrorCode::kZeroLengthSegment:
      return true;
    default:
      return false;
  }
}

}  // namespace linerguide
