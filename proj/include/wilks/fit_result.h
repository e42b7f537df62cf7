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

#ifndef WILKS_FIT_RESULT_H_
#define WILKS_FIT_RESULT_H_

#include <string>
#include <vector>

#include "wilks/comparison_data.h"
#include "wilks/errors.h"

namespace wilks {

struct SolverOptions {
  // Converged once max_i |d_i - E d_i| <= residual_scale * max(1, N (n - 1))
  // where N is the largest per-pair trial count (1 for graphs).
  double residual_scale = 1e-10;
  int max_iterations = 10000;
  // Any |beta_i| beyond this is treated as a boundary solution.
  double divergence_bound = 40.0;
  // Beta-model only: a residual that has not dropped below its value this
  // many sweeps ago signals a nonexistent MLE.
  int stall_window = 500;
  // Bradley-Terry identification vertex (0-based); its parameter is 0.
  int reference = 0;
};

struct FitResult {
  std::vector<double> beta;
  double loglik = 0.0;
  int iterations = 0;
  // Max violation of the (possibly reduced) likelihood equations.
  double residual = 0.0;
  ExistenceVerdict existence;
  // Identification vertex, or -1 when every parameter is free.
  int reference = -1;
};

// Thrown when the MLE does not exist; carries the structural witness when
// one is available.
class NoMleError : public Error {
 public:
  NoMleError(const std::string& message, ExistenceVerdict verdict)
      : Error(ErrorCode::kNoMleExists, message), verdict_(std::move(verdict)) {}

  const ExistenceVerdict& verdict() const { return verdict_; }

 private:
  ExistenceVerdict verdict_;
};

// Checks that `tied` lists at least two distinct in-range vertices and
// returns them sorted. Throws ErrorCode::kInvalidTiedSet otherwise.
std::vector<int> NormalizeTiedSet(int n, const std::vector<int>& tied);

// Stable `key=value` lines.
std::string ToKeyValue(const FitResult& fit);

}  // namespace wilks

#endif  // WILKS_FIT_RESULT_H_
