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

#include "wilks/wilks_stats.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "wilks/beta_model.h"
#include "wilks/errors.h"
#include "wilks/format.h"
#include "wilks/normal.h"

namespace wilks {
namespace {

void CheckSizes(std::size_t d, std::size_t expected, std::size_t other) {
  if (d != expected || d != other) {
    throw Error(ErrorCode::kDimensionMismatch,
                "degree, expectation and variance lengths differ");
  }
}

}  // namespace

bool Rejects(double z, double alpha, Tail tail) {
  if (tail == Tail::kUpper) return z > NormalQuantile(1.0 - alpha);
  return std::abs(z) > NormalQuantile(1.0 - 0.5 * alpha);
}

std::string_view ModelName(Model model) {
  return model == Model::kBradleyTerry ? "bt" : "beta";
}

std::string_view NullKindName(NullKind kind) {
  return kind == NullKind::kSimple ? "simple" : "composite";
}

TestReport MakeTestReport(Model model, NullKind kind, int n, int r,
                          double loglik_full, double loglik_null, double df) {
  TestReport report;
  report.model = model;
  report.null_kind = kind;
  report.n = n;
  report.r = r;
  report.loglik_full = loglik_full;
  report.loglik_null = loglik_null;
  report.raw_lrt = 2.0 * (loglik_full - loglik_null);
  report.df = df;
  report.z = (report.raw_lrt - df) / std::sqrt(2.0 * df);
  report.p_value = NormalUpperTail(report.z);
  report.p_two_sided = std::min(1.0, 2.0 * NormalUpperTail(std::abs(report.z)));
  return report;
}

TestReport BtSimpleTest(const ComparisonMatrix& m,
                        std::span<const double> null_beta,
                        const SolverOptions& options) {
  if (null_beta.size() != static_cast<std::size_t>(m.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "null vector has " + std::to_string(null_beta.size()) +
                    " entries for " + std::to_string(m.size()) + " teams");
  }
  if (options.reference >= 0 && options.reference < m.size() &&
      null_beta[options.reference] != 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "null vector must be 0 at the reference team " +
                    std::to_string(options.reference + 1));
  }
  const FitResult fit = FitBtMle(m, options);
  const double null_loglik = BtLogLikelihood(m, null_beta);
  TestReport report =
      MakeTestReport(Model::kBradleyTerry, NullKind::kSimple, m.size(), 0,
                     fit.loglik, null_loglik, m.size() - 1.0);
  report.beta_full = fit.beta;
  report.beta_null.assign(null_beta.begin(), null_beta.end());
  return report;
}

TestReport BtCompositeTest(const ComparisonMatrix& m,
                           const std::vector<int>& tied,
                           const SolverOptions& options) {
  const int r = static_cast<int>(NormalizeTiedSet(m.size(), tied).size());
  const FitResult full = FitBtMle(m, options);
  const FitResult restricted = FitBtRestricted(m, tied, options);
  TestReport report =
      MakeTestReport(Model::kBradleyTerry, NullKind::kComposite, m.size(), r,
                     full.loglik, restricted.loglik, r - 1.0);
  report.beta_full = full.beta;
  report.beta_null = restricted.beta;
  return report;
}

TestReport BetaSimpleTest(const SimpleGraph& g,
                          std::span<const double> null_beta,
                          const SolverOptions& options) {
  const FitResult fit = FitBetaMle(g, options);
  const double null_loglik = BetaLogLikelihood(g, null_beta);
  TestReport report = MakeTestReport(Model::kBeta, NullKind::kSimple, g.size(),
                                     0, fit.loglik, null_loglik, g.size());
  report.beta_full = fit.beta;
  report.beta_null.assign(null_beta.begin(), null_beta.end());
  return report;
}

TestReport BetaCompositeTest(const SimpleGraph& g, const std::vector<int>& tied,
                             const SolverOptions& options,
                             std::optional<double> anchor) {
  const int r = static_cast<int>(NormalizeTiedSet(g.size(), tied).size());
  const FitResult full = FitBetaMle(g, options);
  const FitResult restricted = FitBetaRestricted(g, tied, options, anchor);
  TestReport report =
      MakeTestReport(Model::kBeta, NullKind::kComposite, g.size(), r,
                     full.loglik, restricted.loglik, static_cast<double>(r));
  report.beta_full = full.beta;
  report.beta_null = restricted.beta;
  return report;
}

double DiagonalQuadratic(std::span<const int> d,
                         std::span<const double> expected,
                         std::span<const double> variance) {
  CheckSizes(d.size(), expected.size(), variance.size());
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(variance[i] > 0.0)) {
      throw Error(ErrorCode::kNonpositiveVariance,
                  "variance of vertex " + std::to_string(i + 1) +
                      " is not positive");
    }
    const double x = d[i] - expected[i];
    total += x * x / variance[i];
  }
  return total;
}

double FullQuadratic(std::span<const int> d, std::span<const double> expected,
                     const Eigen::MatrixXd& covariance,
                     std::optional<int> drop_index) {
  const int n = static_cast<int>(d.size());
  if (expected.size() != d.size() || covariance.rows() != n ||
      covariance.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "covariance does not match the degree vector");
  }
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    if (!drop_index || *drop_index != i) kept.push_back(i);
  }
  const int size = static_cast<int>(kept.size());
  Eigen::MatrixXd block(size, size);
  Eigen::VectorXd x(size);
  for (int a = 0; a < size; ++a) {
    x(a) = d[kept[a]] - expected[kept[a]];
    for (int b = 0; b < size; ++b) block(a, b) = covariance(kept[a], kept[b]);
  }
  Eigen::LLT<Eigen::MatrixXd> cholesky(block);
  if (cholesky.info() != Eigen::Success ||
      cholesky.matrixL().toDenseMatrix().diagonal().minCoeff() <= 0.0) {
    throw Error(ErrorCode::kSingularCovariance,
                "covariance block is not positive definite");
  }
  return x.dot(cholesky.solve(x));
}

double ApproximateBtQuadratic(std::span<const int> d,
                              std::span<const double> expected,
                              const BtCovariance& covariance) {
  const int n = static_cast<int>(d.size());
  if (expected.size() != d.size() || covariance.full_diagonal.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "covariance does not match the degree vector");
  }
  double diagonal = 0.0, sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == covariance.reference) continue;
    const double x = d[i] - expected[i];
    diagonal += x * x / covariance.full_diagonal(i);
    sum += x;
  }
  return diagonal + sum * sum / covariance.full_diagonal(covariance.reference);
}

ConditionReport ComputeConditionReport(std::span<const double> beta) {
  ConditionReport report;
  const int n = static_cast<int>(beta.size());
  report.n = n;
  if (n == 0) return report;
  const auto [lo, hi] = std::minmax_element(beta.begin(), beta.end());
  report.max_merit_ratio = std::exp(*hi - *lo);
  for (int i = 0; i < n; ++i) {
    report.max_abs_beta = std::max(report.max_abs_beta, std::abs(beta[i]));
    for (int j = 0; j < n; ++j) {
      // (e^a - e^b) / (e^a + e^b) = tanh((a - b) / 2)
      report.bt_spread += std::abs(std::tanh(0.5 * (beta[i] - beta[j])));
      if (j > i) {
        report.beta_spread += std::abs(std::exp(beta[i] + beta[j]) - 0.5);
      }
    }
  }
  const double log_n = std::log(static_cast<double>(n));
  report.bt_ratio_rate = std::pow(n, 1.0 / 14.0) * std::pow(log_n, -2.0 / 7.0);
  report.bt_spread_rate =
      std::pow(n, 25.0 / 14.0) * std::pow(log_n, -15.0 / 7.0);
  report.beta_bound_rate = std::log(log_n);
  report.beta_spread_rate = static_cast<double>(n) * n / log_n;
  return report;
}

std::string ToKeyValue(const TestReport& report) {
  std::ostringstream out;
  out << "model=" << ModelName(report.model) << '\n';
  out << "null=" << NullKindName(report.null_kind) << '\n';
  out << "n=" << report.n << '\n';
  if (report.null_kind == NullKind::kComposite) out << "r=" << report.r << '\n';
  out << "loglik_full=" << FormatExact(report.loglik_full) << '\n';
  out << "loglik_null=" << FormatExact(report.loglik_null) << '\n';
  out << "raw_lrt=" << FormatExact(report.raw_lrt) << '\n';
  out << "df=" << FormatExact(report.df) << '\n';
  out << "z=" << FormatExact(report.z) << '\n';
  out << "p_value=" << FormatExact(report.p_value) << '\n';
  out << "p_two_sided=" << FormatExact(report.p_two_sided) << '\n';
  return out.str();
}

std::string ToKeyValue(const ConditionReport& report) {
  std::ostringstream out;
  out << "n=" << report.n << '\n';
  out << "max_merit_ratio=" << FormatExact(report.max_merit_ratio) << '\n';
  out << "bt_spread=" << FormatExact(report.bt_spread) << '\n';
  out << "max_abs_beta=" << FormatExact(report.max_abs_beta) << '\n';
  out << "beta_spread=" << FormatExact(report.beta_spread) << '\n';
  out << "bt_ratio_rate=" << FormatExact(report.bt_ratio_rate) << '\n';
  out << "bt_spread_rate=" << FormatExact(report.bt_spread_rate) << '\n';
  out << "beta_bound_rate=" << FormatExact(report.beta_bound_rate) << '\n';
  out << "beta_spread_rate=" << FormatExact(report.beta_spread_rate) << '\n';
  return out.str();
}

}  // namespace wilks
