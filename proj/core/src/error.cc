// Copyright 2026 The LayerSteg Authors
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

#include "layersteg/error.h"

namespace layersteg {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedContainer:
      return "MalformedContainer";
    case ErrorCode::kUnsupportedFormat:
      return "UnsupportedFormat";
    case ErrorCode::kTruncatedData:
      return "TruncatedData";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kInsufficientCapacity:
      return "InsufficientCapacity";
    case ErrorCode::kCapacityExhaustedBySkips:
      return "CapacityExhaustedBySkips";
    case ErrorCode::kBitDepthMismatch:
      return "BitDepthMismatch";
    case ErrorCode::kKeyMismatch:
      return "KeyMismatch";
    case ErrorCode::kMalformedKey:
      return "MalformedKey";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kNotDefined:
      return "NotDefined";
    case ErrorCode::kEmptyMessage:
      return "EmptyMessage";
    case ErrorCode::kUnreachableOptimum:
      return "UnreachableOptimum";
  }
  return "Unknown";
}

}  // namespace layersteg
