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

// Monte Carlo harness for the normalized likelihood-ratio statistics:
// parameter generators, seeded samplers, QQ and power experiments.
//
// Replicate i draws its data from a generator seeded by
// ReplicateSeed(base_seed, i) alone, and results are merged by replicate
// index, so output does not depend on the number of worker threads.

#ifndef WILKS_MONTE_CARLO_H_
#define WILKS_MONTE_CARLO_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wilks/comparison_data.h"
#include "wilks/fit_result.h"
#include "wilks/wilks_stats.h"

namespace wilks {

// The growth parameter L_n of the linear parameter sequences.
class GrowthSpec {
 public:
  enum class Kind { kZero, kLogLogN, kSqrtLogN, kLogN, kValue };

  GrowthSpec() = default;
  static GrowthSpec Value(double value) { return {Kind::kValue, value}; }
  static GrowthSpec Of(Kind kind) { return {kind, 0.0}; }
  // Accepts 0 | zero | log_log_n | sqrt_log_n | log_n | <number>.
  static GrowthSpec Parse(std::string_view text);

  double Resolve(int n) const;
  std::string Label() const;
  Kind kind() const { return kind_; }

 private:
  GrowthSpec(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_ = Kind::kZero;
  double value_ = 0.0;
};

struct SimConfig {
  Model model = Model::kBradleyTerry;
  int n = 50;
  // Trials per pair (Bradley-Terry only).
  int trials = 1;
  GrowthSpec growth;
  // Tied-group size for composite and power runs; 0 picks n / 2 for
  // composite QQ runs.
  int r = 0;
  // Alternative slope for power runs.
  double c = 0.0;
  int replicates = 1000;
  std::uint64_t base_seed = 0;
  double alpha = 0.05;
  Tail tail = Tail::kTwoSided;
  // Beta-model composite nulls fix the tied group at 0 rather than at a free
  // common value.
  bool anchor_beta_null = true;
  int threads = 1;
  SolverOptions solver;

  // Throws ErrorCode::kInvalidArgument.
  void Validate() const;
};

// beta_i = (i-1) L_n / (n-1); with `composite_r`, the first r entries are 0.
std::vector<double> NullBetas(int n, const GrowthSpec& growth,
                              std::optional<int> composite_r = std::nullopt);

// beta_i = i c / r for i <= r and (i - r) L_n / n beyond (1-based i).
std::vector<double> PowerBetas(int n, int r, double c,
                               const GrowthSpec& growth);

// Stateless 64-bit mix of (base_seed, index).
std::uint64_t ReplicateSeed(std::uint64_t base_seed, std::uint64_t index);

// Uniform doubles in [0, 1) with 53 random bits, reproducible across
// standard libraries.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double Next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// d_ij ~ Binomial(trials, p_ij) independently per unordered pair.
ComparisonMatrix SampleBt(int trials, std::span<const double> beta,
                          std::uint64_t seed);
// Independent edges with P(ij) = e^{beta_i + beta_j} / (1 + e^{...}).
SimpleGraph SampleBeta(std::span<const double> beta, std::uint64_t seed);

struct QqSummary {
  // (Phi^{-1}((k - 0.5) / R), k-th smallest z) over successful replicates.
  std::vector<std::pair<double, double>> pairs;
  double ks_distance = 0.0;
  int replicates = 0;
  int failed = 0;
  std::map<std::string, int> failure_reasons;
};

// Throws ErrorCode::kTooManyFailures when more than half the replicates have
// no MLE or fail to converge.
QqSummary RunQqExperiment(const SimConfig& config, NullKind kind);

struct PowerRow {
  Model model = Model::kBradleyTerry;
  int n = 0;
  std::string growth_label;
  int r = 0;
  double c = 0.0;
  int rejections = 0;
  int failures = 0;
  int successes = 0;
  // rejections / successes.
  double rate = 0.0;
  bool too_many_failures = false;
};

// Rejection rate at level alpha of the composite test of
// beta_1 = ... = beta_r = 0 under beta_i = i c / r. Throws kTooManyFailures.
PowerRow RunPowerCell(const SimConfig& config);

// One row per cell; cells with too many failures are flagged rather than
// aborting the grid.
std::vector<PowerRow> RunPowerExperiment(std::span<const SimConfig> grid);

// sup_x |F_emp(x) - Phi(x)|. Throws ErrorCode::kEmptySample.
double KsDistance(std::span<const double> samples);

std::string QqToCsv(const QqSummary& summary);
std::string PowerToCsv(std::span<const PowerRow> rows);

}  // namespace wilks

#endif  // WILKS_MONTE_CARLO_H_
