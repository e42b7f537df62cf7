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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "expect_error.h"
#include "test_util.h"
#include "wilks/bt_model.h"
#include "wilks/monte_carlo.h"
#include "wilks/normal.h"

namespace wilks {
namespace {

using testing::CodeOf;

TEST_CASE("growth specifications") {
  CHECK(GrowthSpec::Parse("0").Resolve(50) == 0.0);
  CHECK(GrowthSpec::Parse("zero").Resolve(50) == 0.0);
  CHECK(GrowthSpec::Parse("log_log_n").Resolve(200) ==
        doctest::Approx(std::log(std::log(200.0))));
  CHECK(GrowthSpec::Parse("sqrt_log_n").Resolve(200) ==
        doctest::Approx(std::sqrt(std::log(200.0))));
  CHECK(GrowthSpec::Parse("log_n").Resolve(200) == doctest::Approx(std::log(200.0)));
  CHECK(GrowthSpec::Parse("1.5").Resolve(10) == 1.5);
  CHECK(GrowthSpec::Parse("log_n").Label() == "log_n");
  CHECK(CodeOf([] { GrowthSpec::Parse("log_m"); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("null parameter sequences") {
  CHECK(NullBetas(4, GrowthSpec::Value(3.0)) == std::vector<double>{0, 1, 2, 3});
  CHECK(NullBetas(5, GrowthSpec()) == std::vector<double>(5, 0.0));
  const std::vector<double> beta = NullBetas(200, GrowthSpec::Parse("log_log_n"));
  CHECK(beta.back() == doctest::Approx(1.6674).epsilon(1e-4));
  CHECK(beta.back() == doctest::Approx(std::log(std::log(200.0))).epsilon(1e-15));
  const std::vector<double> composite = NullBetas(6, GrowthSpec::Value(5.0), 3);
  CHECK(composite == std::vector<double>{0, 0, 0, 3, 4, 5});
}

TEST_CASE("power parameter sequences") {
  CHECK(PowerBetas(4, 2, 1.0, GrowthSpec()) == std::vector<double>{0.5, 1, 0, 0});
  const std::vector<double> null = PowerBetas(10, 4, 0.0, GrowthSpec::Value(1.0));
  CHECK(std::all_of(null.begin(), null.begin() + 4, [](double b) { return b == 0.0; }));
  const std::vector<double> beta = PowerBetas(50, 20, 1.6, GrowthSpec::Value(1.0));
  CHECK(beta[19] == doctest::Approx(1.6));
  CHECK(beta[49] == doctest::Approx(0.6));
  CHECK(beta[20] == doctest::Approx(1.0 / 50));
}

TEST_CASE("replicate seeds") {
  CHECK(ReplicateSeed(7, 3) == ReplicateSeed(7, 3));
  CHECK(ReplicateSeed(7, 3) != ReplicateSeed(7, 4));
  CHECK(ReplicateSeed(7, 3) != ReplicateSeed(8, 3));
  UniformSource a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const double x = a.Next();
    CHECK(x == b.Next());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("samplers are deterministic") {
  const std::vector<double> beta = NullBetas(12, GrowthSpec::Value(1.0));
  CHECK(SampleBt(3, beta, 99) == SampleBt(3, beta, 99));
  CHECK(SampleBeta(beta, 99) == SampleBeta(beta, 99));
  CHECK(!(SampleBeta(beta, 99) == SampleBeta(beta, 100)));
  const ComparisonMatrix m = SampleBt(3, beta, 1);
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      if (i != j) CHECK(m.trials(i, j) == 3);
    }
  }
}

TEST_CASE("samplers saturate") {
  const std::vector<double> beta{20.0, -20.0};
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    REQUIRE(SampleBt(5, beta, seed).wins(0, 1) == 5);
  }
  const std::vector<double> dense{30.0, 30.0, 30.0};
  CHECK(SampleBeta(dense, 1).edge_count() == 3);
}

TEST_CASE("binomial moment oracle") {
  const int n = 50, reps = 10000;
  const std::vector<double> beta(n, 0.0);
  double sum = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    sum += OutDegrees(SampleBt(1, beta, ReplicateSeed(3, rep)))[0];
  }
  const double tolerance = 4 * std::sqrt((n - 1) / 4.0 / reps);
  CHECK(std::abs(sum / reps - (n - 1) / 2.0) <= tolerance);

  // Beta-model edges at beta_1 + beta_2 = 1.
  int hits = 0;
  const std::vector<double> pair{0.25, 0.75};
  for (int rep = 0; rep < reps; ++rep) {
    hits += SampleBeta(pair, ReplicateSeed(4, rep)).edge_count();
  }
  const double p = 1.0 / (1.0 + std::exp(-1.0));
  CHECK(std::abs(hits / double(reps) - p) <= 4 * std::sqrt(p * (1 - p) / reps));
}

TEST_CASE("diagonal quadratic moment contract") {
  const int n = 50, reps = 1000;
  const std::vector<double> beta(n, 0.0);
  const ComparisonMatrix uniform =
      ComparisonMatrix::Uniform(n, 1, std::vector<int>(n * n, 0));
  const std::vector<double> expected = BtExpectedDegrees(uniform, beta);
  const BtCovariance cov = ComputeBtCovariance(uniform, beta);
  std::vector<double> variance(n);
  for (int i = 0; i < n; ++i) variance[i] = cov.full_diagonal(i);
  std::vector<double> values;
  for (int rep = 0; rep < reps; ++rep) {
    const DegreeVector d = OutDegrees(SampleBt(1, beta, ReplicateSeed(11, rep)));
    values.push_back(DiagonalQuadratic(d, expected, variance));
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= reps;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= reps - 1;
  CHECK(std::abs(mean - n) <= 4 * std::sqrt(2.0 * n / reps));
  CHECK(std::abs(var - 2.0 * n) <= 0.4 * 2.0 * n);
}

TEST_CASE("ks distance") {
  CHECK(KsDistance(std::vector<double>{0.0}) == doctest::Approx(0.5));
  CHECK(KsDistance(std::vector<double>{3, 3, 3}) == doctest::Approx(NormalCdf(3.0)));
  CHECK(KsDistance(std::vector<double>{3, 3, 3}) == doctest::Approx(0.99865).epsilon(1e-5));
  CHECK(CodeOf([] { KsDistance(std::vector<double>{}); }) == ErrorCode::kEmptySample);
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal;
  std::vector<double> draws(100000);
  for (double& x : draws) x = normal(rng);
  CHECK(KsDistance(draws) < 0.01);
}

TEST_CASE("qq experiment contracts") {
  SimConfig config;
  config.n = 20;
  config.replicates = 1;
  config.base_seed = 5;
  const QqSummary single = RunQqExperiment(config, NullKind::kSimple);
  REQUIRE(single.pairs.size() == 1);
  CHECK(single.pairs[0].first == 0.0);

  config.replicates = 60;
  config.model = Model::kBeta;
  config.growth = GrowthSpec::Parse("log_log_n");
  const QqSummary serial = RunQqExperiment(config, NullKind::kComposite);
  config.threads = 3;
  const QqSummary parallel = RunQqExperiment(config, NullKind::kComposite);
  CHECK(serial.pairs == parallel.pairs);
  CHECK(serial.ks_distance == parallel.ks_distance);
  CHECK(serial.failed + static_cast<int>(serial.pairs.size()) == 60);
  for (std::size_t k = 1; k < serial.pairs.size(); ++k) {
    CHECK(serial.pairs[k - 1].first < serial.pairs[k].first);
    CHECK(serial.pairs[k - 1].second <= serial.pairs[k].second);
  }
  CHECK(serial.ks_distance >= 0.0);
  CHECK(serial.ks_distance <= 1.0);
  const std::string csv = QqToCsv(serial);
  CHECK(csv.rfind("k,theoretical,empirical\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(serial.pairs.size()) + 1);
}

TEST_CASE("beta model with logarithmic growth fails too often") {
  SimConfig config;
  config.model = Model::kBeta;
  config.n = 50;
  config.replicates = 200;
  config.base_seed = 1;
  config.growth = GrowthSpec::Parse("log_n");
  CHECK(CodeOf([&] { RunQqExperiment(config, NullKind::kSimple); }) ==
        ErrorCode::kTooManyFailures);
  // Slope 12 pushes the tied vertices to full degree.
  config.r = 20;
  config.c = 12.0;
  const SimConfig grid[] = {config};
  const std::vector<PowerRow> rows = RunPowerExperiment(grid);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].too_many_failures);
  CHECK(PowerToCsv(rows).find("TooManyFailures") != std::string::npos);
}

TEST_CASE("power cells") {
  SimConfig config;
  config.n = 30;
  config.r = 10;
  config.replicates = 100;
  config.base_seed = 9;
  config.c = 3.0;
  const PowerRow strong = RunPowerCell(config);
  CHECK(strong.successes + strong.failures == 100);
  CHECK(strong.rate > 0.9);
  config.threads = 2;
  const PowerRow again = RunPowerCell(config);
  CHECK(again.rejections == strong.rejections);
  const std::vector<PowerRow> rows{strong};
  CHECK(PowerToCsv(rows).rfind("model,n,Ln,r,c,rejections,failures,rate\n", 0) == 0);

  config.r = 1;
  CHECK(CodeOf([&] { RunPowerCell(config); }) == ErrorCode::kInvalidArgument);
  config.r = 10;
  config.replicates = 0;
  CHECK(CodeOf([&] { RunPowerCell(config); }) == ErrorCode::kInvalidArgument);
}

}  // namespace
}  // namespace wilks
