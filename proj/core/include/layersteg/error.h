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

#ifndef LAYERSTEG_ERROR_H_
#define LAYERSTEG_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace layersteg {

enum class ErrorCode {
  // Container parsing.
  kMalformedContainer,
  kUnsupportedFormat,
  kTruncatedData,
  // Argument validation (bad mask, bad GA parameters, ...).
  kInvalidArgument,
  // Embedding / extraction.
  kInsufficientCapacity,
  kCapacityExhaustedBySkips,
  kBitDepthMismatch,
  kKeyMismatch,
  kMalformedKey,
  // Metrics.
  kLengthMismatch,
  kNotDefined,
  // Message GA.
  kEmptyMessage,
  kUnreachableOptimum,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception type; callers that
// need to branch on the cause inspect code().
class StegError : public std::runtime_error {
 public:
  StegError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace layersteg

#endif  // LAYERSTEG_ERROR_H_
