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

#include "swlm/error.h"

namespace swlm {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kFileNotFound: return "FileNotFound";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kInvalidUtf8: return "InvalidUtf8";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kEmptyWord: return "EmptyWord";
    case ErrorKind::kMalformed: return "Malformed";
    case ErrorKind::kCorpusTooShort: return "CorpusTooShort";
    case ErrorKind::kCharAdditionForbidden: return "CharAdditionForbidden";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kShapeMismatch: return "ShapeError";
    case ErrorKind::kNonFinite: return "NonFinite";
    case ErrorKind::kBackwardBeforeForward: return "BackwardBeforeForward";
    case ErrorKind::kDivergence: return "Divergence";
    case ErrorKind::kEmptyEvaluation: return "EmptyEvaluation";
    case ErrorKind::kVersion: return "VersionError";
    case ErrorKind::kTruncated: return "Truncated";
    case ErrorKind::kChecksum: return "ChecksumError";
    case ErrorKind::kUnrepresentable: return "Unrepresentable";
    case ErrorKind::kInsufficientData: return "InsufficientData";
    case ErrorKind::kInventoryTooSmall: return "InventoryTooSmall";
  }
  return "Error";
}

}  // namespace swlm
