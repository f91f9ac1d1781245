// Copyright 2026 The SWLM Authors.
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

#ifndef SWLM_ERROR_H_
#define SWLM_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace swlm {

enum class ErrorKind {
  kInvalidArgument,
  kFileNotFound,
  kIo,
  kInvalidUtf8,
  kEmptyCorpus,
  kEmptyWord,
  kMalformed,
  kCorpusTooShort,
  kCharAdditionForbidden,
  kInvalidConfig,
  kShapeMismatch,
  kNonFinite,
  kBackwardBeforeForward,
  kDivergence,
  kEmptyEvaluation,
  kVersion,
  kTruncated,
  kChecksum,
  kUnrepresentable,
  kInsufficientData,
  kInventoryTooSmall,
};

std::string_view error_kind_name(ErrorKind kind);

// Every failure raised by the library. Callers that need to branch on the
// failure class inspect kind(); the CLI maps all of these to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace swlm

#endif  // SWLM_ERROR_H_
