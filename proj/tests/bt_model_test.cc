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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.h"
#include "expect_error.h"
#include "test_util.h"
#include "wilks/bt_model.h"

namespace wilks {
namespace {

using testing::CodeOf;
constexpr double kLog2 = std::numbers::ln2;

// n = 3, K = 2, (d12, d21, d13, d31, d23, d32) = (2, 0, 1, 1, 1, 1).
ComparisonMatrix ThreeTeams() {
  return ComparisonMatrix(3, {0, 2, 1, 0, 0, 1, 1, 1, 0});
}

// n = 4, K = 3, upper wins d12=2, d13=1, d14=2, d23=2, d24=1, d34=2.
ComparisonMatrix FourTeams() {
  return ComparisonMatrix::Uniform(4, 3, {0, 2, 1, 2, 0, 0, 2, 1, 0, 0, 0, 2,
                                          0, 0, 0, 0});
}

oracle::WinTable Table(const ComparisonMatrix& m) {
  oracle::WinTable d(m.size(), std::vector<int>(m.size()));
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size(); ++j) d[i][j] = m.wins(i, j);
  }
  return d;
}

// Frozen from oracle::MaximizeConcave (1e-3 grid over [-6, 6]^2, then
// coordinate ternary search) on the pairwise log-likelihood.
constexpr double kBt3Beta[] = {0.0, -1.5126152570015, -0.756307632093529};
constexpr double kBt3Loglik = -3.4502696592141873;
constexpr double kBt3LoglikAtProbe = -3.8990657891928229;
// Frozen from the same oracle: 0.05 grid over [-6, 6]^3 for the free model,
// 1e-3 grid over [-6, 6]^2 with beta_1 = beta_2 = 0 for the tied model.
constexpr double kBt4Beta[] = {0.0, -0.336472318982807, -1.02002989004641e-07,
                               -0.336472336281671};
constexpr double kBt4Loglik = -12.309202275257991;
constexpr double kBt4TiedBeta[] = {0.0, 0.0, 0.167638838869446,
                                   -0.167638866304838};
constexpr double kBt4TiedLoglik = -12.393073509559139;

TEST_CASE("log-likelihood examples") {
  const ComparisonMatrix cyclic(3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
  CHECK(BtLogLikelihood(cyclic, std::vector<double>{0, 0, 0}) ==
        doctest::Approx(-3 * kLog2).epsilon(1e-15));
  const ComparisonMatrix pair(2, {0, 3, 1, 0});
  CHECK(BtLogLikelihood(pair, std::vector<double>{0, 0}) ==
        doctest::Approx(-4 * kLog2).epsilon(1e-15));
  const std::vector<double> beta{0, -0.5, 0.3};
  CHECK(BtLogLikelihood(ThreeTeams(), beta) ==
        doctest::Approx(kBt3LoglikAtProbe).epsilon(1e-14));
  CHECK(oracle::BtLoglik(Table(ThreeTeams()), beta) ==
        doctest::Approx(kBt3LoglikAtProbe).epsilon(1e-14));
}

TEST_CASE("log-likelihood is overflow safe") {
  const ComparisonMatrix pair(2, {0, 3, 1, 0});
  const double value = BtLogLikelihood(pair, std::vector<double>{0, 800});
  CHECK(std::isfinite(value));
  CHECK(value == doctest::Approx(800 - 4 * 800.0));
  CHECK(CodeOf([&] { BtLogLikelihood(pair, std::vector<double>{0}); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("mle examples") {
  SUBCASE("symmetric data") {
    const ComparisonMatrix m =
        ComparisonMatrix::Uniform(3, 2, {0, 1, 1, 0, 0, 1, 0, 0, 0});
    const FitResult fit = FitBtMle(m);
    for (double b : fit.beta) CHECK(b == doctest::Approx(0).epsilon(1e-12));
  }
  SUBCASE("no mle") {
    const ComparisonMatrix m(2, {0, 3, 0, 0});
    CHECK(CodeOf([&] { FitBtMle(m); }) == ErrorCode::kNoMleExists);
    try {
      FitBtMle(m);
    } catch (const NoMleError& e) {
      CHECK(e.verdict().dominant == std::vector<int>{0});
    }
  }
  SUBCASE("grid oracle") {
    const FitResult fit = FitBtMle(ThreeTeams());
    CHECK(fit.beta[0] == 0.0);
    CHECK(std::abs(fit.beta[1] - kBt3Beta[1]) < 1e-5);
    CHECK(std::abs(fit.beta[2] - kBt3Beta[2]) < 1e-5);
    CHECK(std::abs(fit.loglik - kBt3Loglik) < 1e-8);
  }
}

TEST_CASE("oracle reproduces its frozen values") {
  const oracle::WinTable d = Table(ThreeTeams());
  const auto best = oracle::MaximizeConcave(
      [&](const std::vector<double>& x) {
        return oracle::BtLoglik(d, {0.0, x[0], x[1]});
      },
      2, -6, 6, 1e-2);
  CHECK(std::abs(best[0] - kBt3Beta[1]) < 1e-7);
  CHECK(std::abs(best[1] - kBt3Beta[2]) < 1e-7);
}

TEST_CASE("reference vertex") {
  const ComparisonMatrix m = FourTeams();
  const FitResult base = FitBtMle(m);
  SolverOptions options;
  options.reference = 2;
  const FitResult moved = FitBtMle(m, options);
  CHECK(moved.beta[2] == 0.0);
  CHECK(moved.reference == 2);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(moved.beta[i] - (base.beta[i] - base.beta[2])) < 1e-9);
  }
  CHECK(moved.loglik == doctest::Approx(base.loglik).epsilon(1e-12));
  options.reference = 4;
  CHECK(CodeOf([&] { FitBtMle(m, options); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("solver failure modes") {
  const ComparisonMatrix m(2, {0, 8, 1, 0});  // beta_2 - beta_1 = -log 8
  SolverOptions tight;
  tight.divergence_bound = 1.0;
  CHECK(CodeOf([&] { FitBtMle(m, tight); }) == ErrorCode::kDiverged);
  SolverOptions short_budget;
  short_budget.max_iterations = 1;
  CHECK(CodeOf([&] { FitBtMle(FourTeams(), short_budget); }) ==
        ErrorCode::kNotConverged);
}

TEST_CASE("restricted mle examples") {
  SUBCASE("fully tied") {
    const ComparisonMatrix m(3, {0, 1, 0, 0, 0, 1, 1, 0, 0});
    const FitResult fit = FitBtRestricted(m, {0, 1, 2});
    CHECK(fit.beta == std::vector<double>{0, 0, 0});
    CHECK(fit.loglik == doctest::Approx(-3 * kLog2).epsilon(1e-15));
  }
  SUBCASE("symmetric data") {
    const ComparisonMatrix m =
        ComparisonMatrix::Uniform(3, 2, {0, 1, 1, 0, 0, 1, 0, 0, 0});
    const FitResult fit = FitBtRestricted(m, {0, 1});
    for (double b : fit.beta) CHECK(std::abs(b) < 1e-12);
  }
  SUBCASE("grid oracle on the reduced likelihood") {
    const FitResult fit = FitBtRestricted(FourTeams(), {0, 1});
    CHECK(fit.beta[0] == 0.0);
    CHECK(fit.beta[1] == 0.0);
    CHECK(std::abs(fit.beta[2] - kBt4TiedBeta[2]) < 1e-5);
    CHECK(std::abs(fit.beta[3] - kBt4TiedBeta[3]) < 1e-5);
    CHECK(std::abs(fit.loglik - kBt4TiedLoglik) < 1e-8);
    const FitResult full = FitBtMle(FourTeams());
    for (int i = 1; i < 4; ++i) CHECK(std::abs(full.beta[i] - kBt4Beta[i]) < 1e-5);
    CHECK(std::abs(full.loglik - kBt4Loglik) < 1e-8);
  }
  SUBCASE("group without the reference has a free shared value") {
    const FitResult fit = FitBtRestricted(FourTeams(), {2, 3});
    CHECK(fit.beta[0] == 0.0);
    CHECK(fit.beta[2] == fit.beta[3]);
    CHECK(fit.loglik <= FitBtMle(FourTeams()).loglik + 1e-10);
  }
  SUBCASE("invalid tied sets") {
    CHECK(CodeOf([] { FitBtRestricted(FourTeams(), {1}); }) ==
          ErrorCode::kInvalidTiedSet);
    CHECK(CodeOf([] { FitBtRestricted(FourTeams(), {1, 1}); }) ==
          ErrorCode::kInvalidTiedSet);
    CHECK(CodeOf([] { FitBtRestricted(FourTeams(), {1, 7}); }) ==
          ErrorCode::kInvalidTiedSet);
  }
  SUBCASE("contracted structure without mle") {
    // 3 and 4 only ever beat each other and lose to the group {1, 2}.
    const ComparisonMatrix m(4, {0, 1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0});
    CHECK(CodeOf([&] { FitBtRestricted(m, {0, 1}); }) ==
          ErrorCode::kNoMleExists);
  }
}

TEST_CASE("expected degrees") {
  const ComparisonMatrix five =
      ComparisonMatrix::Uniform(5, 1, std::vector<int>(25, 0));
  for (double e : BtExpectedDegrees(five, std::vector<double>(5, 0.0))) {
    CHECK(e == doctest::Approx(2.0));
  }
  const ComparisonMatrix m =
      ComparisonMatrix::Uniform(3, 2, {0, 1, 1, 0, 0, 1, 0, 0, 0});
  const auto expected = BtExpectedDegrees(
      m, std::vector<double>{0, std::log(2.0), std::log(3.0)});
  // 2 w_i / (w_i + w_j) summed with w = (1, 2, 3).
  CHECK(expected[0] == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
  CHECK(expected[1] == doctest::Approx(32.0 / 15.0).epsilon(1e-14));
  CHECK(expected[2] == doctest::Approx(27.0 / 10.0).epsilon(1e-14));

  const FitResult fit = FitBtMle(FourTeams());
  const auto at_mle = BtExpectedDegrees(FourTeams(), fit.beta);
  const DegreeVector d = OutDegrees(FourTeams());
  for (int i = 0; i < 4; ++i) CHECK(std::abs(at_mle[i] - d[i]) < 1e-8);
}

TEST_CASE("covariance examples") {
  const ComparisonMatrix five =
      ComparisonMatrix::Uniform(5, 1, std::vector<int>(25, 0));
  const BtCovariance cov = ComputeBtCovariance(five, std::vector<double>(5, 0.0));
  CHECK(cov.v.rows() == 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      CHECK(cov.v(a, b) == doctest::Approx(a == b ? 1.0 : -0.25));
    }
  }
  CHECK(cov.full_diagonal(0) == doctest::Approx(1.0));

  for (int trials : {1, 3}) {
    const int n = 6;
    const ComparisonMatrix m =
        ComparisonMatrix::Uniform(n, trials, std::vector<int>(n * n, 0));
    const BtCovariance c = ComputeBtCovariance(m, std::vector<double>(n, 0.0));
    for (int a = 0; a < n - 1; ++a) {
      for (int b = 0; b < n - 1; ++b) {
        const double expected = (a == b ? 8.0 : 4.0) / (trials * (n - 1.0));
        CHECK(c.approximate_inverse(a, b) == doctest::Approx(expected));
      }
    }
  }
}

TEST_CASE("approximate inverse bound against dense inversion") {
  std::mt19937_64 rng(50);
  const int n = 50;
  for (int rep = 0; rep < 5; ++rep) {
    // Spread 0.34 keeps max_{i,j} e^{beta_i - beta_j} <= e^0.68 < 2.
    const std::vector<double> beta = testing::RandomBeta(rng, n, 0.34);
    const ComparisonMatrix m =
        ComparisonMatrix::Uniform(n, 1, std::vector<int>(n * n, 0));
    const BtCovariance cov = ComputeBtCovariance(m, beta);
    REQUIRE(cov.max_merit_ratio <= 2.0);
    const Eigen::MatrixXd error =
        cov.v.fullPivLu().inverse() - cov.approximate_inverse;
    CHECK(error.cwiseAbs().maxCoeff() <= cov.inverse_error_bound);
  }
}

TEST_CASE("fit invariants on random instances (property)") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = std::uniform_int_distribution<int>(3, 15)(rng);
    const int trials = std::uniform_int_distribution<int>(1, 4)(rng);
    const ComparisonMatrix m =
        testing::SolvableBt(rng, testing::RandomBeta(rng, n, 1.0), trials);
    const FitResult fit = FitBtMle(m);
    const DegreeVector d = OutDegrees(m);
    const auto expected = BtExpectedDegrees(m, fit.beta);
    for (int i = 0; i < n; ++i) {
      REQUIRE(std::abs(d[i] - expected[i]) <=
              1e-8 * std::max(1.0, trials * (n - 1.0)));
    }

    // Local maximality on a random probe set.
    std::normal_distribution<double> jitter(0.0, 0.05);
    for (int probe = 0; probe < 10; ++probe) {
      std::vector<double> beta = fit.beta;
      for (int i = 1; i < n; ++i) beta[i] += jitter(rng);
      REQUIRE(BtLogLikelihood(m, beta) <= fit.loglik + 1e-12);
    }

    // Score d - E d against central differences.
    const std::vector<double> point = testing::RandomBeta(rng, n, 1.0);
    const auto score_expected = BtExpectedDegrees(m, point);
    for (int i = 0; i < n; ++i) {
      const double h = 1e-5;
      std::vector<double> up = point, down = point;
      up[i] += h;
      down[i] -= h;
      const double numeric =
          (BtLogLikelihood(m, up) - BtLogLikelihood(m, down)) / (2 * h);
      const double analytic = d[i] - score_expected[i];
      REQUIRE(std::abs(numeric - analytic) <=
              1e-6 * std::max(1.0, std::abs(analytic)));
    }

    // Restricted never beats unrestricted.
    std::vector<int> tied{0, n - 1};
    if (n > 4) tied.push_back(n / 2);
    try {
      const FitResult restricted = FitBtRestricted(m, tied);
      REQUIRE(restricted.loglik <= fit.loglik + 1e-10);
    } catch (const Error& e) {
      REQUIRE(e.code() == ErrorCode::kNoMleExists);
    }
  }
}

TEST_CASE("shift invariance of the data model (property)") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    const ComparisonMatrix m =
        testing::SolvableBt(rng, testing::RandomBeta(rng, n, 1.0), 2);
    const std::vector<double> beta = testing::RandomBeta(rng, n, 1.5);
    std::vector<double> shifted = beta;
    for (double& b : shifted) b += 0.7;
    const auto e1 = BtExpectedDegrees(m, beta);
    const auto e2 = BtExpectedDegrees(m, shifted);
    for (int i = 0; i < n; ++i) REQUIRE(e1[i] == doctest::Approx(e2[i]));
    const BtCovariance c1 = ComputeBtCovariance(m, beta);
    const BtCovariance c2 = ComputeBtCovariance(m, shifted);
    REQUIRE((c1.full - c2.full).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(BtLogLikelihood(m, beta) ==
            doctest::Approx(BtLogLikelihood(m, shifted)).epsilon(1e-12));
  }
}

TEST_CASE("covariance rows sum to zero") {
  std::mt19937_64 rng(5);
  const int n = 12;
  const ComparisonMatrix m =
      testing::SolvableBt(rng, testing::RandomBeta(rng, n, 1.0), 3);
  const BtCovariance cov = ComputeBtCovariance(m, testing::RandomBeta(rng, n, 2.0));
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(cov.full.row(i).sum()) < 1e-12);
  }
  CHECK(cov.v.llt().info() == Eigen::Success);
}

}  // namespace
}  // namespace wilks
