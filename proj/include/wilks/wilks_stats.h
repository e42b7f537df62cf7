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

// Normalized likelihood-ratio statistics for the Bradley-Terry and beta
// models. Every test reports
//
//   z = (2 [l(full) - l(null)] - df) / sqrt(2 df)
//
// with df = n - 1 (BT, simple), r - 1 (BT, tied group of size r), n (beta,
// simple) or r (beta, tied group). Large z is evidence against the null.

#ifndef WILKS_WILKS_STATS_H_
#define WILKS_WILKS_STATS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wilks/bt_model.h"
#include "wilks/comparison_data.h"
#include "wilks/fit_result.h"

namespace wilks {

enum class Model { kBradleyTerry, kBeta };
enum class NullKind { kSimple, kComposite };

// Rejection region for z at level alpha: z > Phi^{-1}(1 - alpha) (kUpper) or
// |z| > Phi^{-1}(1 - alpha / 2) (kTwoSided).
enum class Tail { kUpper, kTwoSided };

bool Rejects(double z, double alpha, Tail tail);

std::string_view ModelName(Model model);    // "bt" | "beta"
std::string_view NullKindName(NullKind kind);  // "simple" | "composite"

struct TestReport {
  Model model = Model::kBradleyTerry;
  NullKind null_kind = NullKind::kSimple;
  int n = 0;
  // Tied-group size; 0 for a simple null.
  int r = 0;
  double loglik_full = 0.0;
  double loglik_null = 0.0;
  double raw_lrt = 0.0;
  double df = 0.0;
  double z = 0.0;
  // Upper-tail normal probability of z.
  double p_value = 0.0;
  // 2 * (1 - Phi(|z|)).
  double p_two_sided = 0.0;
  std::vector<double> beta_full;
  std::vector<double> beta_null;
};

TestReport MakeTestReport(Model model, NullKind kind, int n, int r,
                          double loglik_full, double loglik_null, double df);

TestReport BtSimpleTest(const ComparisonMatrix& m,
                        std::span<const double> null_beta,
                        const SolverOptions& options = {});
TestReport BtCompositeTest(const ComparisonMatrix& m,
                           const std::vector<int>& tied,
                           const SolverOptions& options = {});
TestReport BetaSimpleTest(const SimpleGraph& g,
                          std::span<const double> null_beta,
                          const SolverOptions& options = {});
// With `anchor` the null also fixes the common value (beta_i = anchor for
// every tied i); df stays r.
TestReport BetaCompositeTest(const SimpleGraph& g, const std::vector<int>& tied,
                             const SolverOptions& options = {},
                             std::optional<double> anchor = std::nullopt);

// sum_i (d_i - E d_i)^2 / variance_i. Throws kNonpositiveVariance.
double DiagonalQuadratic(std::span<const int> d,
                         std::span<const double> expected,
                         std::span<const double> variance);

// (d - E d)^T C^{-1} (d - E d) over the indices other than `drop_index`,
// by Cholesky solve. Throws kSingularCovariance when the retained block is
// not positive definite.
double FullQuadratic(std::span<const int> d, std::span<const double> expected,
                     const Eigen::MatrixXd& covariance,
                     std::optional<int> drop_index = std::nullopt);

// The same form with v^-1 replaced by the approximate inverse s, which has
// the closed form sum_{i != ref} x_i^2 / v_ii + (sum_{i != ref} x_i)^2 / v_ref.
double ApproximateBtQuadratic(std::span<const int> d,
                              std::span<const double> expected,
                              const BtCovariance& covariance);

// Growth quantities from the sufficient conditions of the limit theorems,
// with the reference rates they are compared against. Advisory only.
struct ConditionReport {
  int n = 0;
  // max_{i,j} e^{beta_i - beta_j}
  double max_merit_ratio = 1.0;
  // sum_{i,j} |(e^beta_i - e^beta_j) / (e^beta_i + e^beta_j)|
  double bt_spread = 0.0;
  // max_i |beta_i|
  double max_abs_beta = 0.0;
  // sum_{i<j} |e^{beta_i + beta_j} - 1/2|
  double beta_spread = 0.0;
  double bt_ratio_rate = 0.0;    // n^{1/14} (log n)^{-2/7}
  double bt_spread_rate = 0.0;   // n^{25/14} (log n)^{-15/7}
  double beta_bound_rate = 0.0;  // log log n
  double beta_spread_rate = 0.0; // n^2 / log n
};

ConditionReport ComputeConditionReport(std::span<const double> beta);

std::string ToKeyValue(const TestReport& report);
std::string ToKeyValue(const ConditionReport& report);

}  // namespace wilks

#endif  // WILKS_WILKS_STATS_H_
