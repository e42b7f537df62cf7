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

#include "wilks/bt_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "wilks/errors.h"

namespace wilks {
namespace {

void CheckDimension(const ComparisonMatrix& m, std::span<const double> beta) {
  if (beta.size() != static_cast<std::size_t>(m.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter vector has " + std::to_string(beta.size()) +
                    " entries for " + std::to_string(m.size()) + " subjects");
  }
}

// P(i beats j).
double WinProbability(double beta_i, double beta_j) {
  return 1.0 / (1.0 + std::exp(beta_j - beta_i));
}

double ResidualTolerance(const ComparisonMatrix& m,
                         const SolverOptions& options) {
  const double scale =
      static_cast<double>(m.max_trials()) * (m.size() - 1);
  return options.residual_scale * std::max(1.0, scale);
}

double MaxResidual(const DegreeVector& d, const std::vector<double>& expected) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    worst = std::max(worst, std::abs(d[i] - expected[i]));
  }
  return worst;
}

}  // namespace

double LogSumExp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

double BtLogLikelihood(const ComparisonMatrix& m,
                       std::span<const double> beta) {
  CheckDimension(m, beta);
  const DegreeVector d = OutDegrees(m);
  double value = 0.0;
  for (int i = 0; i < m.size(); ++i) value += d[i] * beta[i];
  for (int i = 0; i < m.size(); ++i) {
    for (int j = i + 1; j < m.size(); ++j) {
      const int k = m.trials(i, j);
      if (k != 0) value -= k * LogSumExp(beta[i], beta[j]);
    }
  }
  return value;
}

std::vector<double> BtExpectedDegrees(const ComparisonMatrix& m,
                                      std::span<const double> beta) {
  CheckDimension(m, beta);
  std::vector<double> expected(m.size(), 0.0);
  for (int i = 0; i < m.size(); ++i) {
    for (int j = i + 1; j < m.size(); ++j) {
      const int k = m.trials(i, j);
      if (k == 0) continue;
      const double p = WinProbability(beta[i], beta[j]);
      expected[i] += k * p;
      expected[j] += k * (1.0 - p);
    }
  }
  return expected;
}

FitResult FitBtMle(const ComparisonMatrix& m, const SolverOptions& options) {
  const int n = m.size();
  const int ref = options.reference;
  if (ref < 0 || ref >= n) {
    throw Error(ErrorCode::kInvalidArgument, "reference vertex out of range");
  }
  FitResult fit;
  fit.reference = ref;
  fit.existence = CheckFordCondition(m);
  if (!fit.existence.exists) {
    throw NoMleError(
        "MLE does not exist: some group of subjects never lost to the rest",
        fit.existence);
  }

  const DegreeVector d = OutDegrees(m);
  const double tolerance = ResidualTolerance(m, options);
  std::vector<double> merit(n, 1.0), denom(n, 0.0);
  bool converged = false;
  int sweeps = 0;
  while (true) {
    // denom_i = sum_j k_ij / (w_i + w_j), so E d_i = w_i * denom_i.
    std::fill(denom.begin(), denom.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const int k = m.trials(i, j);
        if (k == 0) continue;
        const double term = k / (merit[i] + merit[j]);
        denom[i] += term;
        denom[j] += term;
      }
    }
    double residual = 0.0;
    for (int i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(d[i] - merit[i] * denom[i]));
    }
    if (residual <= tolerance) {
      converged = true;
      break;
    }
    if (sweeps == options.max_iterations) break;
    ++sweeps;
    for (int i = 0; i < n; ++i) merit[i] = d[i] / denom[i];
    const double scale = merit[ref];
    for (double& w : merit) w /= scale;
    for (int i = 0; i < n; ++i) {
      if (std::abs(std::log(merit[i])) > options.divergence_bound) {
        throw Error(ErrorCode::kDiverged,
                    "|beta_" + std::to_string(i + 1) + "| exceeded " +
                        std::to_string(options.divergence_bound));
      }
    }
  }

  fit.beta.resize(n);
  for (int i = 0; i < n; ++i) fit.beta[i] = std::log(merit[i]);
  fit.beta[ref] = 0.0;
  fit.iterations = sweeps;
  fit.residual = MaxResidual(d, BtExpectedDegrees(m, fit.beta));
  fit.loglik = BtLogLikelihood(m, fit.beta);
  if (!converged) {
    throw Error(ErrorCode::kNotConverged,
                "no convergence after " + std::to_string(sweeps) +
                    " sweeps (residual " + std::to_string(fit.residual) + ")");
  }
  return fit;
}

ComparisonMatrix ContractGroup(const ComparisonMatrix& m,
                               const std::vector<int>& tied,
                               std::vector<int>* mapping) {
  const int n = m.size();
  std::vector<bool> in_group(n, false);
  for (int v : tied) in_group[v] = true;
  std::vector<int>& map = *mapping;
  map.assign(n, -1);
  int next = 0, group_index = -1;
  for (int v = 0; v < n; ++v) {
    if (in_group[v]) {
      if (group_index < 0) group_index = next++;
      map[v] = group_index;
    } else {
      map[v] = next++;
    }
  }
  const int size = next;
  std::vector<int> wins(static_cast<std::size_t>(size) * size, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (map[i] == map[j]) continue;
      wins[static_cast<std::size_t>(map[i]) * size + map[j]] += m.wins(i, j);
    }
  }
  return ComparisonMatrix(size, std::move(wins));
}

FitResult FitBtRestricted(const ComparisonMatrix& m,
                          const std::vector<int>& tied,
                          const SolverOptions& options) {
  const int n = m.size();
  const std::vector<int> group = NormalizeTiedSet(n, tied);
  if (options.reference < 0 || options.reference >= n) {
    throw Error(ErrorCode::kInvalidArgument, "reference vertex out of range");
  }
  if (static_cast<int>(group.size()) == n) {
    FitResult fit;
    fit.beta.assign(n, 0.0);
    fit.loglik = BtLogLikelihood(m, fit.beta);
    fit.reference = options.reference;
    return fit;
  }

  std::vector<int> map;
  const ComparisonMatrix contracted = ContractGroup(m, group, &map);
  SolverOptions reduced = options;
  reduced.reference = map[options.reference];
  FitResult reduced_fit;
  try {
    reduced_fit = FitBtMle(contracted, reduced);
  } catch (const NoMleError& e) {
    ExistenceVerdict verdict;
    verdict.exists = false;
    std::vector<bool> dominant(contracted.size(), false);
    for (int v : e.verdict().dominant) dominant[v] = true;
    for (int v = 0; v < n; ++v) {
      (dominant[map[v]] ? verdict.dominant : verdict.dominated).push_back(v);
    }
    throw NoMleError(
        "restricted MLE does not exist: the contracted comparisons are not "
        "strongly connected",
        std::move(verdict));
  }

  FitResult fit;
  fit.beta.resize(n);
  for (int v = 0; v < n; ++v) fit.beta[v] = reduced_fit.beta[map[v]];
  fit.loglik = BtLogLikelihood(m, fit.beta);
  fit.iterations = reduced_fit.iterations;
  fit.residual = reduced_fit.residual;
  fit.reference = options.reference;
  return fit;
}

BtCovariance ComputeBtCovariance(const ComparisonMatrix& m,
                                 std::span<const double> beta, int reference) {
  CheckDimension(m, beta);
  const int n = m.size();
  if (reference < 0 || reference >= n) {
    throw Error(ErrorCode::kInvalidArgument, "reference vertex out of range");
  }
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = WinProbability(beta[i], beta[j]);
      const double c = m.trials(i, j) * p * (1.0 - p);
      full(i, j) = full(j, i) = -c;
      full(i, i) += c;
      full(j, j) += c;
    }
  }

  BtCovariance cov;
  cov.reference = reference;
  cov.full_diagonal = full.diagonal();
  cov.full = full;
  cov.v.resize(n - 1, n - 1);
  for (int a = 0, i = 0; i < n; ++i) {
    if (i == reference) continue;
    for (int b = 0, j = 0; j < n; ++j) {
      if (j == reference) continue;
      cov.v(a, b++) = full(i, j);
    }
    ++a;
  }
  const double ref_inverse = 1.0 / full(reference, reference);
  cov.approximate_inverse =
      Eigen::MatrixXd::Constant(n - 1, n - 1, ref_inverse);
  for (int a = 0; a < n - 1; ++a) {
    cov.approximate_inverse(a, a) += 1.0 / cov.v(a, a);
  }
  const auto [lo, hi] = std::minmax_element(beta.begin(), beta.end());
  cov.max_merit_ratio = std::exp(*hi - *lo);
  cov.max_trials = m.max_trials();
  const double nm = cov.max_trials * cov.max_merit_ratio;
  cov.inverse_error_bound = 4.0 * cov.max_trials * cov.max_merit_ratio *
                            cov.max_merit_ratio * (1.0 + nm) /
                            ((n - 1.0) * (n - 1.0));
  return cov;
}

std::vector<double> DropIndex(std::span<const double> values, int skip) {
  std::vector<double> kept;
  kept.reserve(values.size() > 0 ? values.size() - 1 : 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (static_cast<int>(i) != skip) kept.push_back(values[i]);
  }
  return kept;
}

}  // namespace wilks
