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

#ifndef WILKS_BETA_MODEL_H_
#define WILKS_BETA_MODEL_H_

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "wilks/comparison_data.h"
#include "wilks/fit_result.h"

namespace wilks {

// log(1 + e^x) without overflow.
double Softplus(double x);

// sum_i beta_i d_i - sum_{i<j} log(1 + e^{beta_i + beta_j}).
double BetaLogLikelihood(const SimpleGraph& g, std::span<const double> beta);

// E d_i = sum_{j != i} p_ij; depends only on beta.
std::vector<double> BetaExpectedDegrees(std::span<const double> beta);

// Decides exactly whether the beta-model MLE exists: the sufficient
// statistics must lie in the interior of their mean-value polytope. With a
// nonempty `tied` set the check applies to the model in which those vertices
// share one parameter; `anchored` fixes that shared value instead.
ExistenceVerdict CheckBetaExistence(const SimpleGraph& g,
                                    const std::vector<int>& tied = {},
                                    bool anchored = false);

// Unrestricted MLE via beta_i <- log d_i - log sum_j e^beta_j / (1 +
// e^{beta_i + beta_j}). Throws NoMleError for degrees outside the interior
// of the degree polytope, a coordinate escaping the divergence bound or a
// stalled residual; ErrorCode::kNotConverged when the sweep budget runs out.
FitResult FitBetaMle(const SimpleGraph& g, const SolverOptions& options = {});

// MLE with one common value shared by the vertices in `tied`. The common
// value is estimated unless `anchor` pins it.
FitResult FitBetaRestricted(const SimpleGraph& g, const std::vector<int>& tied,
                            const SolverOptions& options = {},
                            std::optional<double> anchor = std::nullopt);

// u_ij = e^{beta_i + beta_j} / (1 + e^{beta_i + beta_j})^2 off the diagonal,
// u_ii = sum_{j != i} u_ij.
Eigen::MatrixXd ComputeBetaCovariance(std::span<const double> beta);

}  // namespace wilks

#endif  // WILKS_BETA_MODEL_H_
