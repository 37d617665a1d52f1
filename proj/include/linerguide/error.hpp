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

#ifndef LINERGUIDE_ERROR_HPP_
#define LINERGUIDE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace linerguide {

enum class ErrorCode {
  kInvalidFrame,
  kIndexOutOfRange,
  kDegenerateContour,
  kHeightZero,
  kDegenerateAngle,
  kZeroLengthSegment,
  kSelfIntersection,
  kMergeSelfIntersection,
  kInvalidMergeInput,
  kNoCrossPoint,
  kIncompleteRules,
  kUnknownStyle,
  kBadConfig,
  kSchemaError,
  kNothingToFreeze,
  kUnknownSession,
};

// Wire name of the code, e.g. "DegenerateContour".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// True for the codes that mean "the detector gave us a bad eye", as opposed to
// configuration or programming errors.
bool is_detection_failure(ErrorCode code);

}  // namespace linerguide

#endif  // LINERGUIDE_ERROR_HPP_
