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

// Command-line front end. Everything the `layersteg` binary does lives here
// so that tests can drive it in-process.

#ifndef LAYERSTEG_TOOLS_CLI_H_
#define LAYERSTEG_TOOLS_CLI_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "layersteg/bitplane.h"
#include "layersteg/error.h"
#include "layersteg/pipeline.h"
#include "nlohmann/json.hpp"

namespace layersteg::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitConfig = 2,
  kExitKeyMismatch = 3,
  kExitOracleViolation = 4,
};

using NearestFn =
    std::function<Sample(Sample, const LayerMask&, const BitPattern&)>;

// Report JSON (docs/report.schema.json): the EmbedReport fields verbatim.
// snr_db is a number, the string "inf" when the stego equals the cover, or
// null when undefined.
nlohmann::json ReportToJson(const EmbedReport& report);
// Throws StegError(kInvalidArgument) on a schema violation.
EmbedReport ReportFromJson(const nlohmann::json& json);

struct OracleCheckOptions {
  // GA cases; 0 skips the GA section.
  std::uint64_t ga_samples = 1000;
  // nullopt checks both depths.
  std::optional<BitDepth> bit_depth;
  std::uint64_t seed = 0;
  std::uint64_t nearest_samples_16 = 100000;
};

struct OracleCheckResult {
  std::uint64_t nearest_cases = 0;
  std::uint64_t nearest_mismatches = 0;
  std::uint64_t ga_cases = 0;
  std::uint64_t ga_matches = 0;
  std::uint64_t ga_worse_than_alter = 0;

  bool Passed() const;
};

// `nearest` is the function under test; the tool passes AdjustNearest.
OracleCheckResult RunOracleCheck(const OracleCheckOptions& options,
                                 const NearestFn& nearest, std::ostream& out);

int ExitCodeFor(ErrorCode code);

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err, const NearestFn& nearest = AdjustNearest);

}  // namespace layersteg::cli

#endif  // LAYERSTEG_TOOLS_CLI_H_
