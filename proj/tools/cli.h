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

// Command-line front end: argument handling, input loading and the table,
// CSV and key-value emitters. RunCli is the whole program minus the process
// boundary, so tests drive it directly.

#ifndef WILKS_TOOLS_CLI_H_
#define WILKS_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "wilks/comparison_data.h"
#include "wilks/errors.h"
#include "wilks/monte_carlo.h"

namespace wilks::cli {

// Process exit statuses.
enum ExitStatus : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitParse = 2,
  kExitNoMle = 3,
  kExitNotConverged = 4,
  kExitInvalidArguments = 5,
  kExitDiverged = 6,
  kExitTooManyFailures = 7,
  kExitNumerical = 8,
};

int ExitStatusFor(ErrorCode code);

// Runs one command. `args` excludes the program name. Results go to `out`
// (or the --output file); failures print exactly one line
//   error code=<Name> exit=<status> message=<text>
// to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

struct LabeledComparisons {
  ComparisonMatrix matrix;
  // labels[i] names 0-based team i.
  std::vector<std::string> labels;
};

// One game per line, `winner,loser`, by team name. Teams are numbered in
// sorted name order.
LabeledComparisons ParseGameLog(std::string_view text);

// Real numbers separated by commas, whitespace or newlines; `#` starts a
// comment line.
std::vector<double> ParseVector(std::string_view text);

// Static SVG scatter of theoretical against empirical quantiles with the
// y = x reference line.
std::string QqPlotSvg(const QqSummary& summary, std::string_view title);

}  // namespace wilks::cli

#endif  // WILKS_TOOLS_CLI_H_
