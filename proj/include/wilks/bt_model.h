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

#ifndef WILKS_BT_MODEL_H_
#define WILKS_BT_MODEL_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wilks/comparison_data.h"
#include "wilks/fit_result.h"

namespace wilks {

// log(e^a + e^b) without overflow.
double LogSumExp(double a, double b);

// sum_i d_i beta_i - sum_{i<j} k_ij log(e^beta_i + e^beta_j).
double BtLogLikelihood(const ComparisonMatrix& m, std::span<const double> beta);

// E d_i = sum_{j != i} k_ij e^beta_i / (e^beta_i + e^beta_j).
std::vector<double> BtExpectedDegrees(const ComparisonMatrix& m,
                                      std::span<const double> beta);

// Unrestricted MLE with beta[options.reference] = 0, by the minorization
// fixed point w_i <- d_i / sum_j k_ij / (w_i + w_j) on merits w = e^beta.
// Throws NoMleError when the win digraph is not strongly connected,
// ErrorCode::kNotConverged or ErrorCode::kDiverged.
FitResult FitBtMle(const ComparisonMatrix& m, const SolverOptions& options = {});

// MLE subject to beta_i equal for every i in `tied`. The group is contracted
// to a single subject (intra-group games dropped) and fitted with FitBtMle;
// the shared value is 0 when the reference vertex is tied.
FitResult FitBtRestricted(const ComparisonMatrix& m,
                          const std::vector<int>& tied,
                          const SolverOptions& options = {});

// Merges the vertices of `tied` into one subject placed at the position of
// its smallest member. `mapping[v]` receives the contracted index of v.
ComparisonMatrix ContractGroup(const ComparisonMatrix& m,
                               const std::vector<int>& tied,
                               std::vector<int>* mapping);

struct BtCovariance {
  int reference = 0;
  // Covariance of the out-degrees with the reference row/column removed.
  Eigen::MatrixXd v;
  // Full n x n covariance of (d_1, ..., d_n); rows sum to zero.
  Eigen::MatrixXd full;
  // v_ii for every vertex including the reference.
  Eigen::VectorXd full_diagonal;
  // s_ij = delta_ij / v_ii + 1 / v_ref,ref on the retained indices.
  Eigen::MatrixXd approximate_inverse;
  // 4 N M^2 (1 + N M) / (n - 1)^2, an entrywise bound on v^-1 - s.
  double inverse_error_bound = 0.0;
  double max_merit_ratio = 1.0;
  int max_trials = 0;
};

BtCovariance ComputeBtCovariance(const ComparisonMatrix& m,
                                 std::span<const double> beta,
                                 int reference = 0);

// Drops index `skip` from a length-n vector.
std::vector<double> DropIndex(std::span<const double> values, int skip);

}  // namespace wilks

#endif  // WILKS_BT_MODEL_H_
