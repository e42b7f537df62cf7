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

// Writes a synthetic league season as a `winner,loser` game log for the
// `--input-format games` reader. Two conferences of `teams / 2` teams in
// divisions of five; division rivals meet 4 times, other conference rivals 3
// times and cross-conference opponents twice. Team i (1-based) has log-merit
// spread * (i - 1) / (teams - 1) - spread / 2.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wilks/format.h"
#include "wilks/monte_carlo.h"

namespace {

std::string TeamName(int index, int per_conference) {
  char name[16];
  std::snprintf(name, sizeof(name), "%s%02d",
                index < per_conference ? "East" : "West",
                index % per_conference + 1);
  return name;
}

int GamesBetween(int i, int j, int per_conference) {
  if ((i < per_conference) != (j < per_conference)) return 2;
  return (i % per_conference) / 5 == (j % per_conference) / 5 ? 4 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  int teams = 30;
  double spread = 2.0;
  std::uint64_t seed = 2009;
  std::string output, truth;
  CLI::App app{"Synthetic season game log", "season_fixture"};
  app.add_option("--teams", teams, "even number of teams")
      ->check(CLI::Range(4, 1000));
  app.add_option("--spread", spread, "range of the log-merits");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--output", output, "game log path (default stdout)");
  app.add_option("--truth", truth, "also write team,log_merit rows here");
  CLI11_PARSE(app, argc, argv);
  if (teams % 2 != 0) {
    std::cerr << "error code=InvalidArgument exit=5 message=--teams must be even\n";
    return 5;
  }

  const int per_conference = teams / 2;
  std::vector<double> beta(teams);
  for (int i = 0; i < teams; ++i) {
    beta[i] = spread * i / (teams - 1) - spread / 2;
  }
  wilks::UniformSource uniform(wilks::ReplicateSeed(seed, 0));
  std::ostringstream log;
  log << "# winner,loser\n";
  for (int i = 0; i < teams; ++i) {
    for (int j = i + 1; j < teams; ++j) {
      const double p = 1.0 / (1.0 + std::exp(beta[j] - beta[i]));
      for (int game = 0; game < GamesBetween(i, j, per_conference); ++game) {
        const bool home_wins = uniform.Next() < p;
        log << TeamName(home_wins ? i : j, per_conference) << ','
            << TeamName(home_wins ? j : i, per_conference) << '\n';
      }
    }
  }
  if (output.empty()) {
    std::cout << log.str();
  } else {
    std::ofstream(output) << log.str();
  }
  if (!truth.empty()) {
    std::ofstream file(truth);
    file << "team,log_merit\n";
    for (int i = 0; i < teams; ++i) {
      file << TeamName(i, per_conference) << ',' << wilks::FormatExact(beta[i])
           << '\n';
    }
  }
  return 0;
}
