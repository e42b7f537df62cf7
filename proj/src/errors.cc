// Copyright 2026 The Wilks Authors
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

#include "wilks/errors.h"

namespace wilks {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRow: return "MalformedRow";
    case ErrorCode::kDuplicatePair: return "DuplicatePair";
    case ErrorCode::kVertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kDuplicateEdge: return "DuplicateEdge";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNoMleExists: return "NoMleExists";
    case ErrorCode::kNotConverged: return "NotConverged";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kNonpositiveVariance: return "NonpositiveVariance";
    case ErrorCode::kSingularCovariance: return "SingularCovariance";
    case ErrorCode::kTooManyFailures: return "TooManyFailures";
    case ErrorCode::kEmptySample: return "EmptySample";
    case ErrorCode::kInvalidTiedSet: return "InvalidTiedSet";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace wilks
